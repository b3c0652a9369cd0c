//! Document envelope, input digests, and eagerly validating loaders.
//!
//! Every input file is a JSON envelope `{kind, version, payload}`. Loading
//! is strict: the payload must deserialize for its kind, the structure must
//! build, and the kind's law checks must pass. A law failure is not a usage
//! error; it carries the failing report so the run can surface it as a
//! finding and exit 1, while malformed input never reaches any check and
//! exits 2.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;

use symcat_core::enriched::EnrichedObject;
use symcat_core::equinet::{DenseModel, ModelData, TyingPattern};
use symcat_core::fincat::{
    check_functor, check_natural, validate_category, CatAction, CatActionData, CategoryData,
    FinCategory, FinFunctor, FunctorData, NatData,
};
use symcat_core::report::LawReport;
use symcat_core::symgrp::{
    validate_group, validate_representation, ActionData, FinGroup, GroupData, RepData,
    Representation, SetAction,
};
use symcat_core::sobj::{validate_simplicial, SimplicialObject, SimplicialObjectData};
use symcat_core::topo::{
    validate_complex, validate_filtration, ComplexData, DiagramData, Filtration, FiltrationData,
    PersistenceDiagram, SimplicialComplex,
};

pub const DOC_VERSION: &str = "1";

/// Every document kind the tool reads or writes.
pub const KINDS: [&str; 16] = [
    "action",
    "cat_action",
    "category",
    "complex",
    "diagram",
    "enriched_object",
    "filtration",
    "functor",
    "group",
    "model",
    "nat",
    "report",
    "representation",
    "simplicial_object",
    "trajectory",
    "tying",
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub kind: String,
    pub version: String,
    pub payload: Value,
}

/// One input file as recorded in a run report: path plus content digest.
#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations; nothing was checked.
    Usage(String),
    /// The file could not be read.
    Io { path: String, message: String },
    /// The file is not JSON or not a document envelope.
    Parse { path: String, message: String },
    /// The envelope is fine but the payload does not fit its kind.
    Schema { path: String, message: String },
    /// The document is well formed but fails its own laws; the report says
    /// how. Runs surface this as a failing finding, not a usage error.
    Validation { path: String, report: Box<LawReport> },
}

impl CliError {
    pub fn schema(path: &Path, message: impl Into<String>) -> Self {
        CliError::Schema { path: path.display().to_string(), message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            CliError::Parse { path, message } => write!(f, "parse error in {path}: {message}"),
            CliError::Schema { path, message } => write!(f, "schema error in {path}: {message}"),
            CliError::Validation { path, report } => write!(
                f,
                "validation failed for {path}: {} ({} violation{})",
                report.check,
                report.violations.len(),
                if report.violations.len() == 1 { "" } else { "s" },
            ),
        }
    }
}

impl std::error::Error for CliError {}

/// Collects the digest of every file a run touches, in read order.
#[derive(Default)]
pub struct Ctx {
    pub inputs: Vec<InputRecord>,
}

impl Ctx {
    pub fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let digest = Sha256::digest(&bytes);
        let mut hex = String::with_capacity(64);
        for b in digest {
            hex.push_str(&format!("{:02x}", b));
        }
        self.inputs.push(InputRecord { path: path.display().to_string(), sha256: hex });
        Ok(bytes)
    }

    /// Reads and parses one envelope, checking version and kind.
    pub fn document(&mut self, path: &Path, expect: Option<&str>) -> Result<Document, CliError> {
        let bytes = self.read(path)?;
        let doc: Document = serde_json::from_slice(&bytes).map_err(|e| CliError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        if doc.version != DOC_VERSION {
            return Err(CliError::schema(
                path,
                format!("unsupported version {:?}, expected {:?}", doc.version, DOC_VERSION),
            ));
        }
        if !KINDS.contains(&doc.kind.as_str()) {
            return Err(CliError::schema(path, format!("unknown kind {:?}", doc.kind)));
        }
        if let Some(want) = expect {
            if doc.kind != want {
                return Err(CliError::schema(
                    path,
                    format!("expected a {want} document, found {:?}", doc.kind),
                ));
            }
        }
        Ok(doc)
    }
}

fn payload<T: DeserializeOwned>(doc: &Document, path: &Path) -> Result<T, CliError> {
    serde_json::from_value(doc.payload.clone())
        .map_err(|e| CliError::schema(path, format!("bad {} payload: {e}", doc.kind)))
}

fn guard(path: &Path, report: LawReport) -> Result<LawReport, CliError> {
    if report.passed() {
        Ok(report)
    } else {
        Err(CliError::Validation {
            path: path.display().to_string(),
            report: Box::new(report),
        })
    }
}

/// Payload of an `enriched_object` document. Only the linear flavor has a
/// JSON form: a representation carrying its vector space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnrichedObjectData {
    pub flavor: String,
    pub representation: RepData,
}

/// Payload of a `trajectory` document: iterate rows, one point per step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryData {
    pub points: Vec<Vec<f64>>,
}

pub fn category_from(doc: &Document, path: &Path) -> Result<FinCategory, CliError> {
    let data: CategoryData = payload(doc, path)?;
    let cat = FinCategory::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_category(&cat))?;
    Ok(cat)
}

pub fn group_from(doc: &Document, path: &Path) -> Result<FinGroup, CliError> {
    let data: GroupData = payload(doc, path)?;
    let group = FinGroup::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_group(&group))?;
    Ok(group)
}

pub fn action_from(doc: &Document, path: &Path) -> Result<SetAction, CliError> {
    let data: ActionData = payload(doc, path)?;
    let act = SetAction::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, act.validate())?;
    Ok(act)
}

pub fn rep_from(doc: &Document, path: &Path, tol: f64) -> Result<Representation, CliError> {
    let data: RepData = payload(doc, path)?;
    let rep = Representation::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_representation(&rep, tol))?;
    Ok(rep)
}

pub fn cat_action_from(doc: &Document, path: &Path) -> Result<CatAction, CliError> {
    let data: CatActionData = payload(doc, path)?;
    let act = CatAction::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, act.validate())?;
    Ok(act)
}

pub fn functor_from(
    doc: &Document,
    path: &Path,
) -> Result<(FinCategory, FinCategory, FinFunctor), CliError> {
    let data: FunctorData = payload(doc, path)?;
    let (src, tgt, f) =
        FinFunctor::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_category(&src))?;
    guard(path, validate_category(&tgt))?;
    guard(path, check_functor(&src, &tgt, &f))?;
    Ok((src, tgt, f))
}

/// Resolved naturality data: source and target categories, the two parallel
/// functors, and the per-object component morphisms.
pub type NatParts = (FinCategory, FinCategory, FinFunctor, FinFunctor, Vec<usize>);

pub fn nat_from(doc: &Document, path: &Path) -> Result<NatParts, CliError> {
    let data: NatData = payload(doc, path)?;
    let (src, tgt, f, g, components) =
        data.resolve().map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_category(&src))?;
    guard(path, validate_category(&tgt))?;
    guard(path, check_functor(&src, &tgt, &f))?;
    guard(path, check_functor(&src, &tgt, &g))?;
    let natural = check_natural(&src, &tgt, &f, &g, &components)
        .map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, natural)?;
    Ok((src, tgt, f, g, components))
}

pub fn enriched_from(doc: &Document, path: &Path, tol: f64) -> Result<Representation, CliError> {
    let data: EnrichedObjectData = payload(doc, path)?;
    if data.flavor != "linear" {
        return Err(CliError::schema(
            path,
            format!("unsupported enriched flavor {:?}, only \"linear\" has a JSON form", data.flavor),
        ));
    }
    let rep = Representation::from_doc(&data.representation)
        .map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_representation(&rep, tol))?;
    // Constructing the object proves the payload fits the enriched shape.
    let _ = EnrichedObject::Linear(rep.clone());
    Ok(rep)
}

pub fn model_from(doc: &Document, path: &Path, tol: f64) -> Result<DenseModel, CliError> {
    let data: ModelData = payload(doc, path)?;
    let model = DenseModel::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    if let Some(reps) = &model.boundary_reps {
        guard(path, validate_representation(&reps.0, tol))?;
        guard(path, validate_representation(&reps.1, tol))?;
    }
    Ok(model)
}

pub fn tying_from(doc: &Document, path: &Path) -> Result<TyingPattern, CliError> {
    let pattern: TyingPattern = payload(doc, path)?;
    for class in &pattern.weight_classes {
        for &(r, c) in class {
            if r >= pattern.out_dim || c >= pattern.in_dim {
                return Err(CliError::schema(
                    path,
                    format!("weight entry ({r},{c}) outside a {}x{} layer", pattern.out_dim, pattern.in_dim),
                ));
            }
        }
    }
    for class in &pattern.bias_classes {
        for &r in class {
            if r >= pattern.out_dim {
                return Err(CliError::schema(
                    path,
                    format!("bias entry {r} outside {} outputs", pattern.out_dim),
                ));
            }
        }
    }
    Ok(pattern)
}

pub fn complex_from(doc: &Document, path: &Path) -> Result<SimplicialComplex, CliError> {
    let data: ComplexData = payload(doc, path)?;
    let complex =
        SimplicialComplex::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_complex(&complex))?;
    Ok(complex)
}

pub fn filtration_from(doc: &Document, path: &Path) -> Result<Filtration, CliError> {
    let data: FiltrationData = payload(doc, path)?;
    let filt = Filtration::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_filtration(&filt))?;
    Ok(filt)
}

pub fn diagram_from(doc: &Document, path: &Path) -> Result<PersistenceDiagram, CliError> {
    let data: DiagramData = payload(doc, path)?;
    PersistenceDiagram::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))
}

pub fn simplicial_from(doc: &Document, path: &Path) -> Result<SimplicialObject, CliError> {
    let data: SimplicialObjectData = payload(doc, path)?;
    let obj =
        SimplicialObject::from_doc(&data).map_err(|e| CliError::schema(path, e.to_string()))?;
    guard(path, validate_simplicial(&obj))?;
    Ok(obj)
}

pub fn trajectory_from(doc: &Document, path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let data: TrajectoryData = payload(doc, path)?;
    if data.points.is_empty() {
        return Err(CliError::schema(path, "trajectory has no points"));
    }
    let dim = data.points[0].len();
    for (t, p) in data.points.iter().enumerate() {
        if p.len() != dim {
            return Err(CliError::schema(
                path,
                format!("point {t} has {} coordinates, expected {dim}", p.len()),
            ));
        }
        if let Some(bad) = p.iter().find(|v| !v.is_finite()) {
            return Err(CliError::schema(path, format!("point {t} has non-finite entry {bad}")));
        }
    }
    Ok(data.points)
}

pub fn report_from(doc: &Document, path: &Path) -> Result<Value, CliError> {
    if !doc.payload.is_object() {
        return Err(CliError::schema(path, "report payload must be an object"));
    }
    Ok(doc.payload.clone())
}

// Convenience wrappers: read, digest, parse, validate in one call.

pub fn load_category(ctx: &mut Ctx, path: &Path) -> Result<FinCategory, CliError> {
    let doc = ctx.document(path, Some("category"))?;
    category_from(&doc, path)
}

pub fn load_group(ctx: &mut Ctx, path: &Path) -> Result<FinGroup, CliError> {
    let doc = ctx.document(path, Some("group"))?;
    group_from(&doc, path)
}

pub fn load_action(ctx: &mut Ctx, path: &Path) -> Result<SetAction, CliError> {
    let doc = ctx.document(path, Some("action"))?;
    action_from(&doc, path)
}

pub fn load_rep(ctx: &mut Ctx, path: &Path, tol: f64) -> Result<Representation, CliError> {
    let doc = ctx.document(path, Some("representation"))?;
    rep_from(&doc, path, tol)
}

pub fn load_functor(
    ctx: &mut Ctx,
    path: &Path,
) -> Result<(FinCategory, FinCategory, FinFunctor), CliError> {
    let doc = ctx.document(path, Some("functor"))?;
    functor_from(&doc, path)
}

pub fn load_model(ctx: &mut Ctx, path: &Path, tol: f64) -> Result<DenseModel, CliError> {
    let doc = ctx.document(path, Some("model"))?;
    model_from(&doc, path, tol)
}

pub fn load_filtration(ctx: &mut Ctx, path: &Path) -> Result<Filtration, CliError> {
    let doc = ctx.document(path, Some("filtration"))?;
    filtration_from(&doc, path)
}

pub fn load_diagram(ctx: &mut Ctx, path: &Path) -> Result<PersistenceDiagram, CliError> {
    let doc = ctx.document(path, Some("diagram"))?;
    diagram_from(&doc, path)
}

pub fn load_simplicial(ctx: &mut Ctx, path: &Path) -> Result<SimplicialObject, CliError> {
    let doc = ctx.document(path, Some("simplicial_object"))?;
    simplicial_from(&doc, path)
}

pub fn load_trajectory(ctx: &mut Ctx, path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let doc = ctx.document(path, Some("trajectory"))?;
    trajectory_from(&doc, path)
}

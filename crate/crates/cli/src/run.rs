//! Flag surface, dispatch, and report assembly for the `symcat` binary.
//!
//! Every run produces one report: the subcommand, the digests of the files
//! it read, the seed, an overall status, and a list of findings. Findings
//! embed law reports verbatim, so a failing check carries its replayable
//! witness. Exit codes follow the findings: 0 when everything passed, 1
//! when at least one check found a violation, 2 when bad input stopped any
//! check from running. Timing is tracked but never serialized, so report
//! bytes are stable across runs.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::canon::{canonical_string, json_f64};
use crate::docs::{self, CliError, Ctx, Document, InputRecord};
use crate::maps::{build_map, parse_arch, parse_components, parse_loss, parse_vec};
use symcat_core::enriched::{check_reduction_optimality, check_update_invariance};
use symcat_core::equinet::{
    adversarial_invariance, check_model_equivariance, compress, fit_invariant, AdvMode, FitArch,
};
use symcat_core::fincat::{
    check_functor, check_natural, check_stability, enumerate_hyp, validate_category,
};
use symcat_core::optdyn::{
    banach_iterate, check_flow_equivariance, check_semigroup, detect_convergence,
    estimate_contraction, meta_fixed_point, FlowMap, OptError,
};
use symcat_core::pinn::{train, PdeSpec, PinnError, SourceFn, TrainConfig};
use symcat_core::report::{LawReport, Status};
use symcat_core::rng::CounterRng;
use symcat_core::sobj::{
    check_simplicial_invariance, nerve, nerve_family_from_functor, validate_simplicial,
};
use symcat_core::symgrp::{
    burnside_count, intertwiner_basis, orbits, validate_group, validate_representation,
};
use symcat_core::topo::{
    bottleneck, bottleneck_all_dims, check_equivariant_filtration, diagram_invariance,
    persistence, validate_complex, validate_filtration, ComplexAction,
};
use symcat_core::ALG_TOL;

/// RNG stream for points the command line draws itself (base points,
/// probe vectors); distinct from every library and test stream.
const CLI_STREAM: u64 = 41;

#[derive(Parser, Debug)]
#[command(
    name = "symcat",
    version,
    about = "Validate structured documents and check categorical, symmetry, dynamical, and topological laws"
)]
pub struct Cli {
    /// Seed for randomized checks; falls back to SYMCAT_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Tolerance for approximate numeric checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Emit the run report as canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load one document and run its structural and law checks.
    Validate {
        #[arg(long)]
        doc: PathBuf,
    },
    /// Run the law checks of one or more documents (kind picks the laws).
    Laws {
        /// Document to check; repeat the flag for several.
        #[arg(long = "doc", required = true)]
        docs: Vec<PathBuf>,
        /// Update recipe for enriched-object invariance (see `contract --help`).
        #[arg(long)]
        map: Option<String>,
        /// Sample count for randomized checks.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Enumerate all structure-preserving self-maps of a category.
    Hyp {
        #[arg(long)]
        category: PathBuf,
    },
    /// Check candidate stability components for a self-functor against the
    /// enumerated self-functor category.
    Stability {
        #[arg(long)]
        functor: PathBuf,
        /// Per-object component morphisms, e.g. "a=ia,b=ib".
        #[arg(long)]
        components: String,
    },
    /// Orbits and the averaged fixed-point count of a group action.
    Orbits {
        #[arg(long)]
        action: PathBuf,
    },
    /// Dimension and residual of the space of linear maps commuting with
    /// two representations.
    Intertwiner {
        #[arg(long = "rep-in")]
        rep_in: PathBuf,
        #[arg(long = "rep-out")]
        rep_out: PathBuf,
    },
    /// Sampled equivariance check of a model between two representations.
    Equivariance {
        #[arg(long)]
        model: PathBuf,
        /// Input-side representation; defaults to the one in the model document.
        #[arg(long = "rep-in")]
        rep_in: Option<PathBuf>,
        /// Output-side representation; defaults to the one in the model document.
        #[arg(long = "rep-out")]
        rep_out: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Weight-tying classes and parameter counts for a layer equivariant
    /// between two actions.
    Compress {
        #[arg(long = "action-in")]
        action_in: PathBuf,
        #[arg(long = "action-out")]
        action_out: PathBuf,
    },
    /// Fit a pooled invariant model to a named target and report the error.
    FitInvariant {
        #[arg(long)]
        rep: PathBuf,
        /// Target function: sumsq, mean, or first.
        #[arg(long, default_value = "sumsq")]
        target: String,
        /// Gradient step budget.
        #[arg(long)]
        steps: Option<usize>,
        /// Hidden width of the per-point feature map (0 = linear features).
        #[arg(long)]
        hidden: Option<usize>,
        #[arg(long)]
        lr: Option<f64>,
    },
    /// Hunt for symmetry-breaking loss gaps around a base point.
    Adversarial {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        /// Loss recipe: quad, sumsq, or custom-poly:c0,c1,...
        #[arg(long, default_value = "quad")]
        loss: String,
        /// orbit compares the loss across the whole orbit; fixed perturbs
        /// inside an epsilon ball.
        #[arg(long, default_value = "orbit")]
        mode: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Base point, comma-separated; defaults to a seeded draw.
        #[arg(long)]
        point: Option<String>,
    },
    /// Estimate the worst observed contraction ratio of a map on a box.
    Contract {
        /// Map recipe: scale:c, offset:v, affine:a,b, reynolds, canonical,
        /// or gradstep:eta.
        #[arg(long)]
        map: String,
        /// Dimension of the space; defaults to the representation's.
        #[arg(long)]
        dim: Option<usize>,
        /// Representation for reynolds/canonical recipes.
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Loss for gradstep recipes.
        #[arg(long)]
        loss: Option<String>,
        #[arg(long)]
        pairs: Option<usize>,
        /// Lower box corner, comma-separated or one broadcast value.
        #[arg(long)]
        lo: Option<String>,
        /// Upper box corner, comma-separated or one broadcast value.
        #[arg(long)]
        hi: Option<String>,
    },
    /// Iterate a map to a fixed point and report the residual history.
    Iterate {
        #[arg(long)]
        map: String,
        /// Starting point, comma-separated.
        #[arg(long)]
        x0: String,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        loss: Option<String>,
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
    },
    /// Check discrete flow laws: semigroup composition or equivariance.
    Flow {
        /// Flow recipe, e.g. gradstep:0.1 (with --loss) or scale:0.5.
        #[arg(long)]
        flow: String,
        #[arg(long)]
        loss: Option<String>,
        /// Law to check: semigroup or equivariance.
        #[arg(long)]
        check: String,
        /// Representation (required for equivariance).
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Largest time for equivariance checks.
        #[arg(long = "t-max")]
        t_max: Option<usize>,
    },
    /// First time a trajectory stays within epsilon of its final point.
    Converge {
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Fixed point of an invariant update plus its measured symmetry defect.
    Meta {
        #[arg(long)]
        map: String,
        #[arg(long)]
        rep: PathBuf,
        /// Starting point; defaults to the origin.
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        loss: Option<String>,
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
    },
    /// Train a 1-d collocation network, optionally with a symmetrized ansatz.
    TrainPinn {
        #[arg(long, default_value = "poisson1d")]
        pde: String,
        /// Source term: cospi, zero, or one.
        #[arg(long, default_value = "cospi")]
        source: String,
        /// on trains the symmetrized ansatz, off the raw network.
        #[arg(long, default_value = "off")]
        symmetric: String,
        #[arg(long)]
        steps: Option<usize>,
        /// Hidden architecture as LAYERSxWIDTH, e.g. 2x16.
        #[arg(long)]
        arch: Option<String>,
        #[arg(long)]
        lr: Option<f64>,
        /// Also write the canonical JSON run report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Birth/death pairs of a filtered complex by boundary reduction.
    Persistence {
        #[arg(long)]
        filtration: PathBuf,
    },
    /// Bottleneck distance between two persistence diagrams.
    Bottleneck {
        a: PathBuf,
        b: PathBuf,
        /// Restrict to one homology dimension; default spans all.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Equivariant-filtration check plus the diagram-invariance corollary.
    PhCheck {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        filtration: PathBuf,
    },
    /// Validate simplicial identities; build nerves and check induced families.
    Simplicial {
        /// Simplicial-object document to validate.
        #[arg(long)]
        object: Option<PathBuf>,
        /// Category document whose nerve to build instead.
        #[arg(long)]
        nerve: Option<PathBuf>,
        /// Truncation depth of the nerve.
        #[arg(long)]
        depth: Option<usize>,
        /// Self-functor document inducing a level family on the nerve.
        #[arg(long)]
        functor: Option<PathBuf>,
    },
    /// Round-trip a report document through the canonical serializer.
    Report {
        #[arg(long)]
        doc: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Laws { .. } => "laws",
            Command::Hyp { .. } => "hyp",
            Command::Stability { .. } => "stability",
            Command::Orbits { .. } => "orbits",
            Command::Intertwiner { .. } => "intertwiner",
            Command::Equivariance { .. } => "equivariance",
            Command::Compress { .. } => "compress",
            Command::FitInvariant { .. } => "fit-invariant",
            Command::Adversarial { .. } => "adversarial",
            Command::Contract { .. } => "contract",
            Command::Iterate { .. } => "iterate",
            Command::Flow { .. } => "flow",
            Command::Converge { .. } => "converge",
            Command::Meta { .. } => "meta",
            Command::TrainPinn { .. } => "train-pinn",
            Command::Persistence { .. } => "persistence",
            Command::Bottleneck { .. } => "bottleneck",
            Command::PhCheck { .. } => "ph-check",
            Command::Simplicial { .. } => "simplicial",
            Command::Report { .. } => "report",
        }
    }
}

/// The run's single output document. `elapsed_ms` is tracked for callers
/// but never serialized: report bytes must not depend on wall time.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: Vec<InputRecord>,
    pub seed: u64,
    pub status: Status,
    pub findings: Vec<Value>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

pub struct Outcome {
    pub report: RunReport,
    pub exit: i32,
}

/// Resolves the seed: flag, then SYMCAT_SEED, then 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SYMCAT_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("SYMCAT_SEED is not an unsigned integer: {v:?}"))),
        Err(_) => Ok(0),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let seed = resolve_seed(cli.seed)?;
    let tol = cli.tol.unwrap_or(ALG_TOL);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::usage(format!("tolerance must be finite and nonnegative, got {tol}")));
    }
    let mut ctx = Ctx::default();
    let findings = match run_command(&cli.command, &mut ctx, seed, tol) {
        Ok(f) => f,
        // A document failed its own laws while loading: that is the run's
        // result, reported with the witness rather than treated as misuse.
        Err(CliError::Validation { path, report }) => {
            let mut v = report_value(&report);
            insert(&mut v, "input", Value::String(path));
            vec![v]
        }
        Err(e) => return Err(e),
    };
    let failed = findings
        .iter()
        .any(|f| f.get("status").and_then(Value::as_str) == Some("fail"));
    let report = RunReport {
        subcommand: cli.command.name().to_string(),
        inputs: std::mem::take(&mut ctx.inputs),
        seed,
        status: if failed { Status::Fail } else { Status::Pass },
        findings,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome { exit: if failed { 1 } else { 0 }, report })
}

/// Renders the report: canonical JSON bytes, or stable human text.
pub fn emit(report: &RunReport, as_json: bool) -> String {
    if as_json {
        let mut s = canonical_json(report);
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    out.push_str(&format!("subcommand: {}\n", report.subcommand));
    out.push_str(&format!("seed: {}\n", report.seed));
    out.push_str(&format!(
        "status: {}\n",
        if matches!(report.status, Status::Pass) { "pass" } else { "fail" }
    ));
    if !report.inputs.is_empty() {
        out.push_str("inputs:\n");
        for i in &report.inputs {
            out.push_str(&format!("  {} sha256:{}\n", i.path, i.sha256));
        }
    }
    out.push_str("findings:\n");
    for f in &report.findings {
        out.push_str(&render_finding(f));
    }
    out
}

pub fn canonical_json(report: &RunReport) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    canonical_string(&value)
}

fn render_finding(f: &Value) -> String {
    let check = f.get("check").and_then(Value::as_str).unwrap_or("finding");
    let status = f.get("status").and_then(Value::as_str).unwrap_or("pass");
    let mut line = format!("  [{status}] {check}");
    if let Value::Object(map) = f {
        let mut keys: Vec<&String> = map.keys().collect();
        keys.sort();
        for k in keys {
            if k == "check" || k == "status" || k == "violations" {
                continue;
            }
            line.push_str(&format!(" {}={}", k, render_scalar(&map[k])));
        }
        if let Some(Value::Array(violations)) = map.get("violations") {
            if !violations.is_empty() {
                line.push_str(&format!(" violations={}", violations.len()));
                line.push_str(&format!(" first={}", render_scalar(&violations[0])));
            }
        }
    }
    line.push('\n');
    line
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::Array(items) if items.len() > 8 => format!("[{} values]", items.len()),
        other => {
            let s = canonical_string(other);
            if s.len() > 160 {
                format!("{}...", &s[..157])
            } else {
                s
            }
        }
    }
}

fn report_value(report: &LawReport) -> Value {
    serde_json::to_value(report).expect("law report serializes")
}

fn insert(v: &mut Value, key: &str, value: Value) {
    if let Value::Object(map) = v {
        map.insert(key.to_string(), value);
    }
}

fn tagged(mut v: Value, check: &str, pass: bool) -> Value {
    insert(&mut v, "check", Value::String(check.to_string()));
    insert(&mut v, "status", Value::String(if pass { "pass" } else { "fail" }.to_string()));
    v
}

fn with_input(report: LawReport, path: &Path) -> Value {
    let mut v = report_value(&report);
    insert(&mut v, "input", Value::String(path.display().to_string()));
    v
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::usage(e.to_string())
}

fn run_command(cmd: &Command, ctx: &mut Ctx, seed: u64, tol: f64) -> Result<Vec<Value>, CliError> {
    match cmd {
        Command::Validate { doc } => {
            let document = ctx.document(doc, None)?;
            law_findings(&document, doc, tol, None, None, seed)
        }
        Command::Laws { docs: paths, map, samples } => {
            let mut findings = Vec::new();
            for path in paths {
                let document = ctx.document(path, None)?;
                findings.extend(law_findings(
                    &document,
                    path,
                    tol,
                    map.as_deref(),
                    *samples,
                    seed,
                )?);
            }
            Ok(findings)
        }
        Command::Hyp { category } => cmd_hyp(ctx, category),
        Command::Stability { functor, components } => cmd_stability(ctx, functor, components),
        Command::Orbits { action } => cmd_orbits(ctx, action),
        Command::Intertwiner { rep_in, rep_out } => cmd_intertwiner(ctx, rep_in, rep_out, tol),
        Command::Equivariance { model, rep_in, rep_out, samples } => {
            cmd_equivariance(ctx, model, rep_in.as_deref(), rep_out.as_deref(), *samples, seed, tol)
        }
        Command::Compress { action_in, action_out } => cmd_compress(ctx, action_in, action_out),
        Command::FitInvariant { rep, target, steps, hidden, lr } => {
            cmd_fit(ctx, rep, target, *steps, *hidden, *lr, seed, tol)
        }
        Command::Adversarial { model, rep, loss, mode, eps, samples, point } => cmd_adversarial(
            ctx,
            model,
            rep,
            loss,
            mode,
            *eps,
            *samples,
            point.as_deref(),
            seed,
            tol,
        ),
        Command::Contract { map, dim, rep, loss, pairs, lo, hi } => cmd_contract(
            ctx,
            map,
            *dim,
            rep.as_deref(),
            loss.as_deref(),
            *pairs,
            lo.as_deref(),
            hi.as_deref(),
            seed,
            tol,
        ),
        Command::Iterate { map, x0, rep, loss, max_iter } => {
            cmd_iterate(ctx, map, x0, rep.as_deref(), loss.as_deref(), *max_iter, tol)
        }
        Command::Flow { flow, loss, check, rep, dim, samples, t_max } => cmd_flow(
            ctx,
            flow,
            loss.as_deref(),
            check,
            rep.as_deref(),
            *dim,
            *samples,
            *t_max,
            seed,
            tol,
        ),
        Command::Converge { trajectory, epsilon } => cmd_converge(ctx, trajectory, *epsilon),
        Command::Meta { map, rep, x0, loss, max_iter } => {
            cmd_meta(ctx, map, rep, x0.as_deref(), loss.as_deref(), *max_iter, seed, tol)
        }
        Command::TrainPinn { pde, source, symmetric, steps, arch, lr, report: _ } => {
            cmd_train_pinn(pde, source, symmetric, *steps, arch.as_deref(), *lr, seed)
        }
        Command::Persistence { filtration } => cmd_persistence(ctx, filtration),
        Command::Bottleneck { a, b, dim } => cmd_bottleneck(ctx, a, b, *dim),
        Command::PhCheck { action, filtration } => cmd_ph_check(ctx, action, filtration),
        Command::Simplicial { object, nerve, depth, functor } => cmd_simplicial(
            ctx,
            object.as_deref(),
            nerve.as_deref(),
            *depth,
            functor.as_deref(),
            tol,
        ),
        Command::Report { doc } => cmd_report(ctx, doc),
    }
}

/// The law checks a document's kind calls for. Loading already guards the
/// same laws, so reaching this point means everything passes; the value is
/// the embedded report with its case counts and metrics.
fn law_findings(
    doc: &Document,
    path: &Path,
    tol: f64,
    map: Option<&str>,
    samples: Option<usize>,
    seed: u64,
) -> Result<Vec<Value>, CliError> {
    let findings = match doc.kind.as_str() {
        "category" => {
            let cat = docs::category_from(doc, path)?;
            vec![validate_category(&cat)]
        }
        "group" => {
            let group = docs::group_from(doc, path)?;
            vec![validate_group(&group)]
        }
        "action" => {
            let act = docs::action_from(doc, path)?;
            vec![act.validate()]
        }
        "representation" => {
            let rep = docs::rep_from(doc, path, tol)?;
            vec![validate_representation(&rep, tol)]
        }
        "cat_action" => {
            let act = docs::cat_action_from(doc, path)?;
            vec![act.validate()]
        }
        "functor" => {
            let (src, tgt, f) = docs::functor_from(doc, path)?;
            vec![check_functor(&src, &tgt, &f)]
        }
        "nat" => {
            let (src, tgt, f, g, components) = docs::nat_from(doc, path)?;
            let natural =
                check_natural(&src, &tgt, &f, &g, &components).map_err(|e| usage(e))?;
            vec![check_functor(&src, &tgt, &f), check_functor(&src, &tgt, &g), natural]
        }
        "enriched_object" => {
            let rep = docs::enriched_from(doc, path, tol)?;
            let n = samples.unwrap_or(64);
            let mut reports =
                vec![validate_representation(&rep, tol), check_reduction_optimality(&rep, n, seed, tol)];
            if let Some(recipe) = map {
                if recipe != "canonical" {
                    let update = build_map(recipe, rep.dim, Some(&rep), None)?;
                    reports.push(check_update_invariance(|x| update(x), &rep, n, seed, tol));
                }
            }
            reports
        }
        "model" => {
            let model = docs::model_from(doc, path, tol)?;
            match &model.boundary_reps {
                Some(reps) => {
                    let n = samples.unwrap_or(100);
                    vec![check_model_equivariance(&model, &reps.0, &reps.1, n, seed, tol)
                        .map_err(|e| usage(e))?]
                }
                None => vec![LawReport::pass("document-validity", 1)],
            }
        }
        "tying" => {
            docs::tying_from(doc, path)?;
            vec![LawReport::pass("document-validity", 1)]
        }
        "complex" => {
            let complex = docs::complex_from(doc, path)?;
            vec![validate_complex(&complex)]
        }
        "filtration" => {
            let filt = docs::filtration_from(doc, path)?;
            vec![validate_filtration(&filt)]
        }
        "diagram" => {
            docs::diagram_from(doc, path)?;
            vec![LawReport::pass("document-validity", 1)]
        }
        "simplicial_object" => {
            let obj = docs::simplicial_from(doc, path)?;
            vec![validate_simplicial(&obj)]
        }
        "trajectory" => {
            let points = docs::trajectory_from(doc, path)?;
            vec![LawReport::pass("document-validity", points.len() as u64)]
        }
        "report" => {
            docs::report_from(doc, path)?;
            vec![LawReport::pass("document-validity", 1)]
        }
        other => return Err(CliError::schema(path, format!("unknown kind {other:?}"))),
    };
    Ok(findings.into_iter().map(|r| with_input(r, path)).collect())
}

fn cmd_hyp(ctx: &mut Ctx, category: &Path) -> Result<Vec<Value>, CliError> {
    let cat = docs::load_category(ctx, category)?;
    let hyp = enumerate_hyp(&cat).map_err(|e| usage(e))?;
    let mut hom_sizes = Map::new();
    let mut transformations: u64 = 0;
    for ((f, g), comps) in &hyp.homs {
        hom_sizes.insert(format!("{f}->{g}"), Value::from(comps.len() as u64));
        transformations += comps.len() as u64;
    }
    let functor_names: Vec<Value> = hyp
        .endofunctors
        .iter()
        .map(|f| {
            let objs: Vec<String> =
                f.obj_map.iter().map(|&x| cat.obj_name(x).to_string()).collect();
            Value::String(objs.join(","))
        })
        .collect();
    Ok(vec![json!({
        "check": "endofunctor-census",
        "status": "pass",
        "endofunctors": hyp.endofunctors.len(),
        "object_images": functor_names,
        "hom_sizes": hom_sizes,
        "transformations": transformations,
    })])
}

fn cmd_stability(ctx: &mut Ctx, functor: &Path, components: &str) -> Result<Vec<Value>, CliError> {
    let (src, tgt, f) = docs::load_functor(ctx, functor)?;
    if serde_json::to_value(src.to_doc()).unwrap() != serde_json::to_value(tgt.to_doc()).unwrap() {
        return Err(CliError::usage(
            "stability needs a self-functor: source and target categories differ",
        ));
    }
    let pairs = parse_components(components)?;
    let mut gamma = vec![usize::MAX; src.n_objects()];
    for (obj, mor) in &pairs {
        let x = src
            .obj_index(obj)
            .ok_or_else(|| CliError::usage(format!("unknown object {obj:?} in --components")))?;
        let m = src
            .mor_index(mor)
            .ok_or_else(|| CliError::usage(format!("unknown morphism {mor:?} in --components")))?;
        gamma[x] = m;
    }
    if let Some(x) = gamma.iter().position(|&m| m == usize::MAX) {
        return Err(CliError::usage(format!(
            "--components is missing object {:?}",
            src.obj_name(x)
        )));
    }
    let hyp = enumerate_hyp(&src).map_err(|e| usage(e))?;
    let report = check_stability(&hyp, &f, &gamma).map_err(|e| usage(e))?;
    Ok(vec![report_value(&report)])
}

fn cmd_orbits(ctx: &mut Ctx, action: &Path) -> Result<Vec<Value>, CliError> {
    let act = docs::load_action(ctx, action)?;
    let orbit_list = orbits(&act);
    let burnside = burnside_count(&act).map_err(|e| usage(e))?;
    let sizes: Vec<u64> = orbit_list.iter().map(|o| o.len() as u64).collect();
    let representatives: Vec<&str> =
        orbit_list.iter().map(|o| act.points[o[0]].as_str()).collect();
    let burnside_v = u64::try_from(burnside)
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(burnside.to_string()));
    let agree = burnside == orbit_list.len() as u128;
    Ok(vec![json!({
        "check": "orbit-census",
        "status": if agree { "pass" } else { "fail" },
        "orbits": orbit_list.len(),
        "burnside": burnside_v,
        "sizes": sizes,
        "representatives": representatives,
    })])
}

fn cmd_intertwiner(
    ctx: &mut Ctx,
    rep_in: &Path,
    rep_out: &Path,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let ri = docs::load_rep(ctx, rep_in, tol)?;
    let ro = docs::load_rep(ctx, rep_out, tol)?;
    let same_group = serde_json::to_value(ri.group.to_doc()).unwrap()
        == serde_json::to_value(ro.group.to_doc()).unwrap();
    if !same_group {
        return Err(CliError::usage("the two representations use different groups"));
    }
    let basis = intertwiner_basis(&ri, &ro);
    let mut max_residual: f64 = 0.0;
    let mut worst: Option<(usize, usize)> = None;
    for (k, t) in basis.iter().enumerate() {
        for g in 0..ri.group.order() {
            let lhs = ro.mat(g).matmul(t);
            let rhs = t.matmul(ri.mat(g));
            let gap = lhs.sub(&rhs).max_abs();
            if gap > max_residual {
                max_residual = gap;
                worst = Some((k, g));
            }
        }
    }
    let pass = max_residual <= tol;
    let mut finding = json!({
        "check": "intertwiner-basis",
        "status": if pass { "pass" } else { "fail" },
        "dimension": basis.len(),
        "max_residual": json_f64(max_residual),
        "dim_in": ri.dim,
        "dim_out": ro.dim,
    });
    if let Some((k, g)) = worst {
        if !pass {
            insert(
                &mut finding,
                "violations",
                json!([{"law": "commutation-residual",
                        "witness": [format!("basis {k}"), ri.group.name(g)]}]),
            );
        }
    }
    Ok(vec![finding])
}

fn cmd_equivariance(
    ctx: &mut Ctx,
    model: &Path,
    rep_in: Option<&Path>,
    rep_out: Option<&Path>,
    samples: Option<usize>,
    seed: u64,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let m = docs::load_model(ctx, model, tol)?;
    let (ri, ro) = match (rep_in, rep_out) {
        (Some(a), Some(b)) => (docs::load_rep(ctx, a, tol)?, docs::load_rep(ctx, b, tol)?),
        (None, None) => match &m.boundary_reps {
            Some(reps) => (reps.0.clone(), reps.1.clone()),
            None => {
                return Err(CliError::usage(
                    "the model document carries no representations; pass --rep-in and --rep-out",
                ))
            }
        },
        _ => return Err(CliError::usage("pass both --rep-in and --rep-out, or neither")),
    };
    let report = check_model_equivariance(&m, &ri, &ro, samples.unwrap_or(100), seed, tol)
        .map_err(|e| usage(e))?;
    Ok(vec![report_value(&report)])
}

fn cmd_compress(ctx: &mut Ctx, action_in: &Path, action_out: &Path) -> Result<Vec<Value>, CliError> {
    let a_in = docs::load_action(ctx, action_in)?;
    let a_out = docs::load_action(ctx, action_out)?;
    let (pattern, report) = compress(&a_in, &a_out).map_err(|e| usage(e))?;
    let mut finding = serde_json::to_value(&report).expect("compression report serializes");
    finding = tagged(finding, "compression", true);
    insert(
        &mut finding,
        "pattern",
        serde_json::to_value(&pattern).expect("tying pattern serializes"),
    );
    Ok(vec![finding])
}

fn cmd_fit(
    ctx: &mut Ctx,
    rep: &Path,
    target: &str,
    steps: Option<usize>,
    hidden: Option<usize>,
    lr: Option<f64>,
    seed: u64,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let rep = docs::load_rep(ctx, rep, tol)?;
    let target_fn: Box<dyn Fn(&[f64]) -> f64> = match target {
        "sumsq" => Box::new(|x: &[f64]| x.iter().map(|v| v * v).sum()),
        "mean" => Box::new(|x: &[f64]| x.iter().sum::<f64>() / x.len() as f64),
        "first" => Box::new(|x: &[f64]| x[0]),
        other => {
            return Err(CliError::usage(format!(
                "unknown target {other:?}; expected sumsq, mean, or first"
            )))
        }
    };
    let mut arch = FitArch::default();
    if let Some(h) = hidden {
        arch.hidden = h;
    }
    if let Some(l) = lr {
        arch.lr = l;
    }
    let budget = steps.unwrap_or(400);
    let outcome = fit_invariant(&*target_fn, &rep, &arch, budget, seed).map_err(|e| usage(e))?;
    let mut finding = json!({
        "check": "fit-invariant",
        "status": "pass",
        "target": target,
        "sup_error": json_f64(outcome.sup_error),
        "steps_used": outcome.steps_used,
        "budget": budget,
        "budget_exhausted": outcome.budget_exhausted,
    });
    if outcome.budget_exhausted {
        insert(&mut finding, "flags", json!(["budget-exhausted"]));
    }
    Ok(vec![finding])
}

#[allow(clippy::too_many_arguments)]
fn cmd_adversarial(
    ctx: &mut Ctx,
    model: &Path,
    rep: &Path,
    loss: &str,
    mode: &str,
    eps: Option<f64>,
    samples: Option<usize>,
    point: Option<&str>,
    seed: u64,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let m = docs::load_model(ctx, model, tol)?;
    let r = docs::load_rep(ctx, rep, tol)?;
    let loss = parse_loss(loss)?;
    let mode = match mode {
        "orbit" => AdvMode::Orbit,
        "fixed" => AdvMode::Fixed,
        other => {
            return Err(CliError::usage(format!("unknown mode {other:?}; expected orbit or fixed")))
        }
    };
    let x = match point {
        Some(p) => {
            let v = parse_vec(p)?;
            if v.len() != r.dim {
                return Err(CliError::usage(format!(
                    "--point has {} coordinates, the representation acts on {}",
                    v.len(),
                    r.dim
                )));
            }
            v
        }
        None => {
            let mut rng = CounterRng::stream(seed, CLI_STREAM);
            (0..r.dim).map(|_| rng.uniform() * 2.0 - 1.0).collect()
        }
    };
    let report =
        adversarial_invariance(&m, &loss, &r, &x, mode, eps.unwrap_or(0.1), samples.unwrap_or(32), seed, tol)
            .map_err(|e| usage(e))?;
    let mut finding = report_value(&report);
    insert(&mut finding, "base_point", Value::Array(x.iter().map(|&v| json_f64(v)).collect()));
    Ok(vec![finding])
}

#[allow(clippy::too_many_arguments)]
fn cmd_contract(
    ctx: &mut Ctx,
    map: &str,
    dim: Option<usize>,
    rep: Option<&Path>,
    loss: Option<&str>,
    pairs: Option<usize>,
    lo: Option<&str>,
    hi: Option<&str>,
    seed: u64,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let rep_loaded = match rep {
        Some(p) => Some(docs::load_rep(ctx, p, tol)?),
        None => None,
    };
    let loss_parsed = match loss {
        Some(l) => Some(parse_loss(l)?),
        None => None,
    };
    let dim = dim
        .or(rep_loaded.as_ref().map(|r| r.dim))
        .ok_or_else(|| CliError::usage("pass --dim or --rep to fix the dimension"))?;
    if dim == 0 {
        return Err(CliError::usage("dimension must be positive"));
    }
    let f = build_map(map, dim, rep_loaded.as_ref(), loss_parsed.as_ref())?;
    let lo = match lo {
        Some(s) => broadcast_corner(parse_vec(s)?, dim)?,
        None => vec![-1.0; dim],
    };
    let hi = match hi {
        Some(s) => broadcast_corner(parse_vec(s)?, dim)?,
        None => vec![1.0; dim],
    };
    if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
        return Err(CliError::usage("--lo must be strictly below --hi in every coordinate"));
    }
    let cert = estimate_contraction(|x| f(x), &lo, &hi, pairs.unwrap_or(200), seed);
    let contractive = cert.max_ratio < 1.0;
    let mut finding = serde_json::to_value(&cert).expect("certificate serializes");
    finding = tagged(finding, "contraction-estimate", contractive);
    insert(&mut finding, "map", Value::String(map.to_string()));
    if !contractive {
        insert(
            &mut finding,
            "violations",
            json!([{"law": "contraction-ratio",
                    "witness": [format!("max ratio {}", crate::canon::fmt_g17(cert.max_ratio))]}]),
        );
    }
    Ok(vec![finding])
}

fn broadcast_corner(v: Vec<f64>, dim: usize) -> Result<Vec<f64>, CliError> {
    if v.len() == dim {
        Ok(v)
    } else if v.len() == 1 {
        Ok(vec![v[0]; dim])
    } else {
        Err(CliError::usage(format!("expected 1 or {dim} corner entries, found {}", v.len())))
    }
}

fn cmd_iterate(
    ctx: &mut Ctx,
    map: &str,
    x0: &str,
    rep: Option<&Path>,
    loss: Option<&str>,
    max_iter: Option<usize>,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let rep_loaded = match rep {
        Some(p) => Some(docs::load_rep(ctx, p, tol)?),
        None => None,
    };
    let loss_parsed = match loss {
        Some(l) => Some(parse_loss(l)?),
        None => None,
    };
    let x0 = parse_vec(x0)?;
    if x0.is_empty() {
        return Err(CliError::usage("--x0 needs at least one coordinate"));
    }
    let f = build_map(map, x0.len(), rep_loaded.as_ref(), loss_parsed.as_ref())?;
    match banach_iterate(|x| f(x), &x0, tol, max_iter.unwrap_or(100)) {
        Ok(fp) => {
            let finding = tagged(
                serde_json::to_value(&fp).expect("fixed point serializes"),
                "fixed-point-iteration",
                true,
            );
            Ok(vec![finding])
        }
        Err(OptError::NonConvergence { iterations, last_residual, last, residuals }) => {
            Ok(vec![json!({
                "check": "fixed-point-iteration",
                "status": "fail",
                "iterations": iterations,
                "last_residual": json_f64(last_residual),
                "last": last.iter().map(|&v| json_f64(v)).collect::<Vec<_>>(),
                "residuals": residuals.iter().map(|&v| json_f64(v)).collect::<Vec<_>>(),
                "violations": [{"law": "residual-under-tolerance",
                                "witness": [format!("residual {} after {} iterations",
                                                    crate::canon::fmt_g17(last_residual), iterations)]}],
            })])
        }
        Err(e) => Err(usage(e)),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_flow(
    ctx: &mut Ctx,
    flow: &str,
    loss: Option<&str>,
    check: &str,
    rep: Option<&Path>,
    dim: Option<usize>,
    samples: Option<usize>,
    t_max: Option<usize>,
    seed: u64,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let rep_loaded = match rep {
        Some(p) => Some(docs::load_rep(ctx, p, tol)?),
        None => None,
    };
    let loss_parsed = match loss {
        Some(l) => Some(parse_loss(l)?),
        None => None,
    };
    let dim = dim
        .or(rep_loaded.as_ref().map(|r| r.dim))
        .ok_or_else(|| CliError::usage("pass --dim or --rep to fix the dimension"))?;
    let f = build_map(flow, dim, rep_loaded.as_ref(), loss_parsed.as_ref())?;
    let flow_map = FlowMap::new(f);
    match check {
        "semigroup" => {
            let given = [(0, 1), (1, 1), (1, 2), (2, 3)];
            let report = check_semigroup(&flow_map, dim, &given, samples.unwrap_or(16), seed);
            Ok(vec![report_value(&report)])
        }
        "equivariance" => {
            let rep = rep_loaded
                .as_ref()
                .ok_or_else(|| CliError::usage("equivariance checks need --rep"))?;
            let report = check_flow_equivariance(
                &flow_map,
                rep,
                t_max.unwrap_or(4),
                samples.unwrap_or(16),
                seed,
                tol,
            );
            Ok(vec![report_value(&report)])
        }
        other => {
            Err(CliError::usage(format!("unknown check {other:?}; expected semigroup or equivariance")))
        }
    }
}

fn cmd_converge(ctx: &mut Ctx, trajectory: &Path, epsilon: f64) -> Result<Vec<Value>, CliError> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(CliError::usage(format!("--epsilon must be positive, got {epsilon}")));
    }
    let points = docs::load_trajectory(ctx, trajectory)?;
    let time = detect_convergence(&points, epsilon);
    Ok(vec![json!({
        "check": "convergence-time",
        "status": "pass",
        "epsilon": json_f64(epsilon),
        "time": time,
        "points": points.len(),
    })])
}

fn cmd_meta(
    ctx: &mut Ctx,
    map: &str,
    rep: &Path,
    x0: Option<&str>,
    loss: Option<&str>,
    max_iter: Option<usize>,
    seed: u64,
    tol: f64,
) -> Result<Vec<Value>, CliError> {
    let _ = seed;
    let rep = docs::load_rep(ctx, rep, tol)?;
    let loss_parsed = match loss {
        Some(l) => Some(parse_loss(l)?),
        None => None,
    };
    let f = build_map(map, rep.dim, Some(&rep), loss_parsed.as_ref())?;
    let x0 = match x0 {
        Some(s) => {
            let v = parse_vec(s)?;
            if v.len() != rep.dim {
                return Err(CliError::usage(format!(
                    "--x0 has {} coordinates, the representation acts on {}",
                    v.len(),
                    rep.dim
                )));
            }
            v
        }
        None => vec![0.0; rep.dim],
    };
    match meta_fixed_point(|x| f(x), &rep, &x0, tol, max_iter.unwrap_or(200)) {
        Ok(meta) => {
            let mut finding = report_value(&meta.report);
            insert(
                &mut finding,
                "fixed_point",
                serde_json::to_value(&meta.fixed_point).expect("fixed point serializes"),
            );
            insert(&mut finding, "defect", json_f64(meta.defect));
            Ok(vec![finding])
        }
        Err(OptError::NonConvergence { iterations, last_residual, .. }) => Ok(vec![json!({
            "check": "meta-fixed-point",
            "status": "fail",
            "iterations": iterations,
            "last_residual": json_f64(last_residual),
            "violations": [{"law": "residual-under-tolerance",
                            "witness": [format!("residual {} after {} iterations",
                                                crate::canon::fmt_g17(last_residual), iterations)]}],
        })]),
        Err(e) => Err(usage(e)),
    }
}

fn cmd_train_pinn(
    pde: &str,
    source: &str,
    symmetric: &str,
    steps: Option<usize>,
    arch: Option<&str>,
    lr: Option<f64>,
    seed: u64,
) -> Result<Vec<Value>, CliError> {
    if pde != "poisson1d" {
        return Err(CliError::usage(format!("unknown pde {pde:?}; only poisson1d is built in")));
    }
    let mut spec = PdeSpec::poisson_cospi();
    spec.source = match source {
        "cospi" => SourceFn::CosPi,
        "zero" => SourceFn::Zero,
        "one" => SourceFn::One,
        other => {
            return Err(CliError::usage(format!(
                "unknown source {other:?}; expected cospi, zero, or one"
            )))
        }
    };
    let symmetric = match symmetric {
        "on" => true,
        "off" => false,
        other => {
            return Err(CliError::usage(format!("--symmetric takes on or off, got {other:?}")))
        }
    };
    let mut cfg = TrainConfig { seed, ..TrainConfig::default() };
    if let Some(s) = steps {
        cfg.steps = s;
    }
    if let Some(a) = arch {
        cfg.hidden = parse_arch(a)?;
    }
    if let Some(l) = lr {
        cfg.lr = l;
    }
    match train(&spec, &cfg, symmetric) {
        Ok(report) => {
            let finding = tagged(
                serde_json::to_value(&report).expect("training report serializes"),
                "collocation-training",
                true,
            );
            Ok(vec![finding])
        }
        Err(PinnError::NonFinite { context, partial }) => {
            let mut finding = json!({
                "check": "collocation-training",
                "status": "fail",
                "violations": [{"law": "finite-loss", "witness": [context]}],
            });
            if let Some(p) = partial {
                insert(
                    &mut finding,
                    "partial",
                    serde_json::to_value(&*p).expect("training report serializes"),
                );
            }
            Ok(vec![finding])
        }
        Err(e) => Err(usage(e)),
    }
}

fn cmd_persistence(ctx: &mut Ctx, filtration: &Path) -> Result<Vec<Value>, CliError> {
    let filt = docs::load_filtration(ctx, filtration)?;
    let diagram = persistence(&filt);
    let doc = diagram.to_doc();
    let mut by_dim: std::collections::BTreeMap<String, u64> = std::collections::BTreeMap::new();
    for bar in &doc.bars {
        *by_dim.entry(bar.dim.to_string()).or_insert(0) += 1;
    }
    Ok(vec![json!({
        "check": "persistence-diagram",
        "status": "pass",
        "bars": doc.bars.len(),
        "by_dim": by_dim,
        "diagram": serde_json::to_value(&doc).expect("diagram serializes"),
    })])
}

fn cmd_bottleneck(
    ctx: &mut Ctx,
    a: &Path,
    b: &Path,
    dim: Option<usize>,
) -> Result<Vec<Value>, CliError> {
    let d1 = docs::load_diagram(ctx, a)?;
    let d2 = docs::load_diagram(ctx, b)?;
    let (distance, dim_v) = match dim {
        Some(d) => (bottleneck(&d1, &d2, d), Value::from(d as u64)),
        None => (bottleneck_all_dims(&d1, &d2), Value::String("all".to_string())),
    };
    Ok(vec![json!({
        "check": "bottleneck-distance",
        "status": "pass",
        "distance": json_f64(distance),
        "dim": dim_v,
    })])
}

fn cmd_ph_check(ctx: &mut Ctx, action: &Path, filtration: &Path) -> Result<Vec<Value>, CliError> {
    let act = docs::load_action(ctx, action)?;
    let filt = docs::load_filtration(ctx, filtration)?;
    let ca = ComplexAction { action: act };
    let on = ca.validate_on(&filt.complex);
    let on_passed = on.passed();
    let mut findings = vec![report_value(&on)];
    if !on_passed {
        return Ok(findings);
    }
    let equivariant = check_equivariant_filtration(&ca, &filt).map_err(|e| usage(e))?;
    let invariance = diagram_invariance(&ca, &filt).map_err(|e| usage(e))?;
    findings.push(report_value(&equivariant));
    findings.push(report_value(&invariance));
    Ok(findings)
}

fn cmd_simplicial(
    ctx: &mut Ctx,
    object: Option<&Path>,
    nerve_of: Option<&Path>,
    depth: Option<usize>,
    functor: Option<&Path>,
    _tol: f64,
) -> Result<Vec<Value>, CliError> {
    match (object, nerve_of) {
        (Some(path), None) => {
            if functor.is_some() {
                return Err(CliError::usage("--functor needs --nerve; a bare object has no chains"));
            }
            let obj = docs::load_simplicial(ctx, path)?;
            let report = validate_simplicial(&obj);
            let sizes: Vec<u64> = (0..obj.levels.len()).map(|k| obj.levels[k].len() as u64).collect();
            let mut finding = with_input(report, path);
            insert(&mut finding, "level_sizes", json!(sizes));
            Ok(vec![finding])
        }
        (None, Some(path)) => {
            let cat = docs::load_category(ctx, path)?;
            let depth = depth.unwrap_or(2);
            let nrv = nerve(&cat, depth).map_err(|e| usage(e))?;
            let sizes: Vec<u64> =
                nrv.object.levels.iter().map(|level| level.len() as u64).collect();
            let mut findings = Vec::new();
            let mut census = report_value(&validate_simplicial(&nrv.object));
            insert(&mut census, "depth", Value::from(depth as u64));
            insert(&mut census, "level_sizes", json!(sizes));
            findings.push(census);
            if let Some(fpath) = functor {
                let (src, tgt, f) = docs::load_functor(ctx, fpath)?;
                let cat_doc = serde_json::to_value(cat.to_doc()).unwrap();
                if serde_json::to_value(src.to_doc()).unwrap() != cat_doc
                    || serde_json::to_value(tgt.to_doc()).unwrap() != cat_doc
                {
                    return Err(CliError::usage(
                        "--functor must be a self-functor of the nerve's category",
                    ));
                }
                let family = nerve_family_from_functor(&nrv, &cat, &f).map_err(|e| usage(e))?;
                let report =
                    check_simplicial_invariance(&family, &nrv.object).map_err(|e| usage(e))?;
                findings.push(report_value(&report));
            }
            Ok(findings)
        }
        _ => Err(CliError::usage("pass exactly one of --object or --nerve")),
    }
}

fn cmd_report(ctx: &mut Ctx, doc: &Path) -> Result<Vec<Value>, CliError> {
    let document = ctx.document(doc, Some("report"))?;
    let payload = docs::report_from(&document, doc)?;
    let first = canonical_string(&payload);
    let reparsed: Value = serde_json::from_str(&first)
        .map_err(|e| CliError::schema(doc, format!("canonical bytes do not reparse: {e}")))?;
    let second = canonical_string(&reparsed);
    let stable = first == second;
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(first.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{:02x}", byte));
    }
    let mut finding = json!({
        "check": "canonical-round-trip",
        "status": if stable { "pass" } else { "fail" },
        "canonical_bytes": first.len(),
        "canonical_sha256": hex,
    });
    if !stable {
        let at = first
            .bytes()
            .zip(second.bytes())
            .position(|(x, y)| x != y)
            .unwrap_or_else(|| first.len().min(second.len()));
        insert(
            &mut finding,
            "violations",
            json!([{"law": "emit-parse-emit-fixpoint",
                    "witness": [format!("first divergence at byte {at}")]}]),
        );
    }
    Ok(vec![finding])
}

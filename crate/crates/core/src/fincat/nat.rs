//! Natural transformations: component checking and both compositions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::category::{CategoryData, FinCategory};
use super::functor::FinFunctor;
use super::FincatError;
use crate::report::{LawReport, Violation};

/// Name-level object and morphism maps, resolved against categories that the
/// surrounding document provides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapPairData {
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

/// Serialized transformation between two functors `f` and `g`, both from
/// `source` to `target`; `components` assigns a target morphism id to each
/// source object name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NatData {
    pub source: CategoryData,
    pub target: CategoryData,
    pub f: MapPairData,
    pub g: MapPairData,
    pub components: BTreeMap<String, String>,
}

impl NatData {
    /// Resolves everything to indices: (source, target, F, G, components).
    pub fn resolve(
        &self,
    ) -> Result<(FinCategory, FinCategory, FinFunctor, FinFunctor, Vec<usize>), FincatError> {
        let source = FinCategory::from_doc(&self.source)?;
        let target = FinCategory::from_doc(&self.target)?;
        let f = resolve_maps(&source, &target, &self.f)?;
        let g = resolve_maps(&source, &target, &self.g)?;
        let mut components = Vec::with_capacity(source.n_objects());
        for x in 0..source.n_objects() {
            let name = source.obj_name(x);
            let comp = self.components.get(name).ok_or_else(|| {
                FincatError::MalformedDocument(format!("object {:?} has no component", name))
            })?;
            components.push(target.mor_index(comp).ok_or_else(|| {
                FincatError::MalformedDocument(format!(
                    "component at {:?} names unknown morphism {:?}",
                    name, comp
                ))
            })?);
        }
        Ok((source, target, f, g, components))
    }
}

fn resolve_maps(
    src: &FinCategory,
    dst: &FinCategory,
    maps: &MapPairData,
) -> Result<FinFunctor, FincatError> {
    let mut obj_map = Vec::with_capacity(src.n_objects());
    for x in 0..src.n_objects() {
        let name = src.obj_name(x);
        let image = maps.object_map.get(name).ok_or_else(|| {
            FincatError::MalformedDocument(format!("object {:?} is not mapped", name))
        })?;
        obj_map.push(dst.obj_index(image).ok_or_else(|| {
            FincatError::MalformedDocument(format!("unknown object {:?} in map", image))
        })?);
    }
    let mut mor_map = Vec::with_capacity(src.n_morphisms());
    for m in 0..src.n_morphisms() {
        let name = src.mor_name(m);
        let image = maps.morphism_map.get(name).ok_or_else(|| {
            FincatError::MalformedDocument(format!("morphism {:?} is not mapped", name))
        })?;
        mor_map.push(dst.mor_index(image).ok_or_else(|| {
            FincatError::MalformedDocument(format!("unknown morphism {:?} in map", image))
        })?);
    }
    Ok(FinFunctor { obj_map, mor_map })
}

/// Checks component endpoints and the naturality square for every source
/// morphism.
pub fn check_natural(
    src: &FinCategory,
    dst: &FinCategory,
    f: &FinFunctor,
    g: &FinFunctor,
    components: &[usize],
) -> Result<LawReport, FincatError> {
    if components.len() != src.n_objects() {
        return Err(FincatError::LengthMismatch {
            expected: src.n_objects(),
            got: components.len(),
        });
    }
    let mut violations = Vec::new();
    let mut cases = 0u64;

    for x in 0..src.n_objects() {
        cases += 1;
        let a = &dst.morphisms[components[x]];
        if a.src != f.obj_map[x] || a.tgt != g.obj_map[x] {
            violations.push(Violation::new("component-endpoints", vec![src.obj_name(x)]));
        }
    }

    for m in 0..src.n_morphisms() {
        cases += 1;
        let (x, y) = (src.morphisms[m].src, src.morphisms[m].tgt);
        // g(m) . a_x must equal a_y . f(m); a missing table entry cannot
        // verify the square, which is a failure of this check, not a crash.
        let lhs = dst.compose(g.mor_map[m], components[x]);
        let rhs = dst.compose(components[y], f.mor_map[m]);
        if lhs.is_none() || lhs != rhs {
            violations.push(Violation::new("naturality", vec![src.mor_name(m)]));
        }
    }

    Ok(LawReport::new("naturality-laws", violations, cases))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatKind {
    /// Stack two transformations between functors sharing source and target:
    /// beta . alpha componentwise.
    Vertical,
    /// Compose across functor composition: alpha between F, F2: C -> D and
    /// beta between G, G2: D -> E give a transformation G.F -> G2.F2.
    Horizontal,
}

/// Everything a composition needs to know about where the transformations
/// live. For the vertical case `mid` is unused and may equal `dst`.
pub struct ComposeContext<'a> {
    pub src: &'a FinCategory,
    pub mid: &'a FinCategory,
    pub dst: &'a FinCategory,
    /// alpha: alpha_bounds.0 => alpha_bounds.1.
    pub alpha_bounds: (&'a FinFunctor, &'a FinFunctor),
    /// beta: beta_bounds.0 => beta_bounds.1.
    pub beta_bounds: (&'a FinFunctor, &'a FinFunctor),
}

/// Composes two transformations, returning the component list of the result.
///
/// Vertical: needs alpha's upper bound to equal beta's lower bound; the
/// result has components beta_x . alpha_x in the shared target.
///
/// Horizontal: alpha between functors C -> D, beta between functors D -> E;
/// the component at x is beta at F2(x) composed after G(alpha_x).
pub fn compose_nat(
    kind: NatKind,
    beta: &[usize],
    alpha: &[usize],
    ctx: &ComposeContext<'_>,
) -> Result<Vec<usize>, FincatError> {
    match kind {
        NatKind::Vertical => {
            if ctx.alpha_bounds.1 != ctx.beta_bounds.0 {
                return Err(FincatError::NotComposable(
                    "vertical composition needs alpha's target functor to be beta's source".into(),
                ));
            }
            if alpha.len() != ctx.src.n_objects() || beta.len() != ctx.src.n_objects() {
                return Err(FincatError::LengthMismatch {
                    expected: ctx.src.n_objects(),
                    got: alpha.len().max(beta.len()),
                });
            }
            let mut out = Vec::with_capacity(alpha.len());
            for x in 0..alpha.len() {
                let c = ctx.dst.compose(beta[x], alpha[x]).ok_or_else(|| {
                    FincatError::NotComposable(format!(
                        "no table entry for {} . {} at object {}",
                        ctx.dst.mor_name(beta[x]),
                        ctx.dst.mor_name(alpha[x]),
                        ctx.src.obj_name(x)
                    ))
                })?;
                out.push(c);
            }
            Ok(out)
        }
        NatKind::Horizontal => {
            if alpha.len() != ctx.src.n_objects() {
                return Err(FincatError::LengthMismatch {
                    expected: ctx.src.n_objects(),
                    got: alpha.len(),
                });
            }
            if beta.len() != ctx.mid.n_objects() {
                return Err(FincatError::LengthMismatch {
                    expected: ctx.mid.n_objects(),
                    got: beta.len(),
                });
            }
            let (_f, f2) = ctx.alpha_bounds;
            let (g, _g2) = ctx.beta_bounds;
            let mut out = Vec::with_capacity(alpha.len());
            for x in 0..alpha.len() {
                let g_alpha = g.mor_map[alpha[x]];
                let beta_at = beta[f2.obj_map[x]];
                let c = ctx.dst.compose(beta_at, g_alpha).ok_or_else(|| {
                    FincatError::NotComposable(format!(
                        "no table entry for {} . {} at object {}",
                        ctx.dst.mor_name(beta_at),
                        ctx.dst.mor_name(g_alpha),
                        ctx.src.obj_name(x)
                    ))
                })?;
                out.push(c);
            }
            Ok(out)
        }
    }
}

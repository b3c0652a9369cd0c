//! Carriers enriched with a symmetry, and the compatibility checks for maps
//! between them: update rules that must commute with the group, canonical
//! orbit representatives, and the averaging regularizer.

use crate::fincat::{check_functor, CatAction, FinFunctor};
use crate::mat::{l2_diff, linf_diff, Mat};
use crate::report::{LawReport, Violation};
use crate::rng::CounterRng;
use crate::symgrp::{orbit_distance, reynolds_map, Representation, SymError};
use thiserror::Error;

/// Decimal places at which orbit elements are compared when picking a
/// canonical representative.
pub const ROUND_DECIMALS: i32 = 12;

#[derive(Debug, Error)]
pub enum EnrichedError {
    #[error("incompatible carriers: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// A carrier with its symmetry: either a linear space with a matrix
/// representation or a category with a group action.
#[derive(Debug, Clone)]
pub enum EnrichedObject {
    Linear(Representation),
    Categorical(CatAction),
}

/// A structure map between enriched carriers of the same flavor.
#[derive(Debug, Clone)]
pub enum EnrichedMorphism {
    Linear(Mat),
    Categorical(FinFunctor),
}

/// Checks that a map between enriched carriers commutes with the symmetry:
/// matrices up to `tol`, functors exactly (composites of finite maps are
/// compared entry by entry). Mixing flavors or group orders is a usage
/// error, not a law violation.
pub fn check_enriched_morphism(
    src: &EnrichedObject,
    dst: &EnrichedObject,
    map: &EnrichedMorphism,
    tol: f64,
) -> Result<LawReport, EnrichedError> {
    match (src, dst, map) {
        (EnrichedObject::Linear(a), EnrichedObject::Linear(b), EnrichedMorphism::Linear(m)) => {
            if a.group.order() != b.group.order() {
                return Err(EnrichedError::Incompatible(format!(
                    "group orders {} and {}",
                    a.group.order(),
                    b.group.order()
                )));
            }
            if m.rows != b.dim || m.cols != a.dim {
                return Err(EnrichedError::Incompatible(format!(
                    "map is {}x{}, carriers want {}x{}",
                    m.rows, m.cols, b.dim, a.dim
                )));
            }
            let mut violations = Vec::new();
            let mut cases = 0u64;
            let mut max_defect: f64 = 0.0;
            for g in 0..a.group.order() {
                cases += 1;
                let lhs = b.mat(g).matmul(m);
                let rhs = m.matmul(a.mat(g));
                let defect = lhs.sub(&rhs).max_abs();
                max_defect = max_defect.max(defect);
                if !(defect <= tol) {
                    violations.push(Violation::new("morphism-equivariance", vec![a.group.name(g)]));
                }
            }
            Ok(LawReport::new("enriched-morphism", violations, cases)
                .with_metric("max_defect", max_defect))
        }
        (
            EnrichedObject::Categorical(a),
            EnrichedObject::Categorical(b),
            EnrichedMorphism::Categorical(f),
        ) => {
            if a.group.order() != b.group.order() {
                return Err(EnrichedError::Incompatible(format!(
                    "group orders {} and {}",
                    a.group.order(),
                    b.group.order()
                )));
            }
            let mut violations = Vec::new();
            let mut cases = 0u64;
            let functor_report = check_functor(&a.cat, &b.cat, f);
            cases += functor_report.cases;
            violations.extend(functor_report.violations);
            for g in 0..a.group.order() {
                cases += 1;
                // B_g . F and F . A_g as plain finite maps, compared exactly.
                let lhs = b.functors[g].compose(f);
                let rhs = f.compose(&a.functors[g]);
                if lhs != rhs {
                    violations.push(Violation::new("morphism-equivariance", vec![a.group.name(g)]));
                }
            }
            Ok(LawReport::new("enriched-morphism", violations, cases))
        }
        _ => Err(EnrichedError::Incompatible(
            "cannot compare a linear carrier with a categorical one".into(),
        )),
    }
}

/// Spot-checks that an update rule commutes with the representation on
/// seeded random points: update(g.x) = g.update(x) within `tol` (max norm).
pub fn check_update_invariance<U: Fn(&[f64]) -> Vec<f64>>(
    update: U,
    rep: &Representation,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;
    let mut max_defect: f64 = 0.0;
    let mut rng = CounterRng::stream(seed, 5);
    for i in 0..n_samples {
        let x = rng.normal_vec(rep.dim);
        let ux = update(&x);
        if ux.len() != rep.dim {
            cases += 1;
            violations.push(Violation::new("update-shape", vec![format!("sample{}", i)]));
            continue;
        }
        for g in 0..rep.group.order() {
            cases += 1;
            let lhs = update(&rep.apply(g, &x));
            if lhs.len() != rep.dim {
                violations.push(Violation::new("update-shape", vec![format!("sample{}", i)]));
                continue;
            }
            let rhs = rep.apply(g, &ux);
            let defect = linf_diff(&lhs, &rhs);
            max_defect = max_defect.max(defect);
            if !(defect <= tol) {
                violations.push(Violation::new(
                    "update-invariance",
                    vec![rep.group.name(g).to_string(), format!("sample{}", i)],
                ));
            }
        }
    }
    LawReport::new("update-invariance", violations, cases).with_metric("max_defect", max_defect)
}

/// Rounded comparison key: each component scaled to `ROUND_DECIMALS` places
/// and rounded to an integer (saturating, non-finite values collapse), so
/// lexicographic comparison ignores noise past the 12th decimal.
fn rounding_key(x: &[f64]) -> Vec<i128> {
    let scale = 10f64.powi(ROUND_DECIMALS);
    x.iter().map(|&v| (v * scale).round() as i128).collect()
}

/// The canonical representative of the orbit of `x`: the orbit element with
/// the lexicographically smallest rounded key, ties resolved by the smallest
/// group-element index. Returns the element as computed, not the rounded
/// key, so downstream arithmetic keeps full precision.
pub fn canonical_representative(rep: &Representation, x: &[f64]) -> Result<Vec<f64>, SymError> {
    if x.len() != rep.dim {
        return Err(SymError::DimensionMismatch { expected: rep.dim, got: x.len() });
    }
    let mut best: Option<(Vec<i128>, Vec<f64>)> = None;
    for g in 0..rep.group.order() {
        let candidate = rep.apply(g, x);
        let key = rounding_key(&candidate);
        match &best {
            Some((bk, _)) if key >= *bk => {}
            _ => best = Some((key, candidate)),
        }
    }
    Ok(best.map(|(_, c)| c).unwrap_or_else(|| x.to_vec()))
}

/// Checks the canonical-representative map on seeded samples: the result
/// lies on the orbit, is invariant across the orbit, and carries the
/// smallest key. With exact (integer-entry) representations a tolerance of
/// zero is attainable because orbits are permuted bitwise.
pub fn check_reduction_optimality(
    rep: &Representation,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> LawReport {
    let mut violations = Vec::new();
    let mut cases = 0u64;
    let mut max_defect: f64 = 0.0;
    let mut rng = CounterRng::stream(seed, 6);
    for i in 0..n_samples {
        let x = rng.normal_vec(rep.dim);
        let Ok(r) = canonical_representative(rep, &x) else { continue };

        cases += 1;
        match orbit_distance(rep, &r, &x) {
            Ok(d) if d <= tol => {}
            _ => violations.push(Violation::new("reduction-membership", vec![format!("sample{}", i)])),
        }

        let rkey = rounding_key(&r);
        for g in 0..rep.group.order() {
            let gx = rep.apply(g, &x);
            cases += 2;
            if let Ok(rg) = canonical_representative(rep, &gx) {
                let defect = linf_diff(&rg, &r);
                max_defect = max_defect.max(defect);
                if !(defect <= tol) {
                    violations.push(Violation::new(
                        "reduction-invariance",
                        vec![rep.group.name(g).to_string(), format!("sample{}", i)],
                    ));
                }
            }
            if rkey > rounding_key(&gx) {
                violations.push(Violation::new(
                    "reduction-minimality",
                    vec![rep.group.name(g).to_string(), format!("sample{}", i)],
                ));
            }
        }
    }
    LawReport::new("reduction-optimality", violations, cases).with_metric("max_defect", max_defect)
}

/// Checks the averaging regularizer r(x) = |x - Px|^2 (P the group
/// averaging projector): it must be constant along orbits (commutation) and
/// vanish exactly on averaged points (projection). Reports the worst defect
/// of each as a metric and flags a trivial fixed subspace.
pub fn check_regularizer(
    rep: &Representation,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<LawReport, SymError> {
    let p = reynolds_map(rep)?;
    let reg = |x: &[f64]| -> f64 {
        let px = p.matvec(x);
        let d = l2_diff(x, &px);
        d * d
    };

    let mut violations = Vec::new();
    let mut cases = 0u64;
    let mut max_commutation: f64 = 0.0;
    let mut max_projection: f64 = 0.0;

    cases += 1;
    if !p.matmul(&p).approx_eq(&p, 1e-12) {
        violations.push(Violation::new("regularizer-projection", vec!["projector-idempotence"]));
    }

    let mut rng = CounterRng::stream(seed, 7);
    for i in 0..n_samples {
        let x = rng.normal_vec(rep.dim);
        let rx = reg(&x);
        for g in 0..rep.group.order() {
            cases += 1;
            let defect = (reg(&rep.apply(g, &x)) - rx).abs();
            max_commutation = max_commutation.max(defect);
            if !(defect <= tol * (1.0 + rx.abs())) {
                violations.push(Violation::new(
                    "regularizer-commutation",
                    vec![rep.group.name(g).to_string(), format!("sample{}", i)],
                ));
            }
        }
        cases += 1;
        let projected = p.matvec(&x);
        let residual = reg(&projected);
        max_projection = max_projection.max(residual);
        if !(residual <= tol) {
            violations.push(Violation::new(
                "regularizer-projection",
                vec![format!("sample{}", i)],
            ));
        }
    }

    let mut report = LawReport::new("regularizer-laws", violations, cases)
        .with_metric("max_commutation_defect", max_commutation)
        .with_metric("max_projection_residual", max_projection);
    if p.column_space_basis(crate::PIV_TOL).is_empty() {
        report = report.with_flag("zero-fixed-subspace");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::symgrp::FinGroup;
    use crate::ALG_TOL;

    fn swap_rep() -> Representation {
        Representation {
            group: FinGroup::cyclic(2),
            dim: 2,
            mats: vec![Mat::identity(2), Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])],
        }
    }

    fn cycle_rep(n: usize) -> Representation {
        let group = FinGroup::cyclic(n);
        let mats = (0..n)
            .map(|g| {
                let mut m = Mat::zeros(n, n);
                for p in 0..n {
                    m.set((p + g) % n, p, 1.0);
                }
                m
            })
            .collect();
        Representation { group, dim: n, mats }
    }

    #[test]
    fn symmetric_updates_pass_the_spot_check() {
        let rep = swap_rep();
        let report =
            check_update_invariance(|x| vec![0.9 * x[0], 0.9 * x[1]], &rep, 16, 0, ALG_TOL);
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
    }

    #[test]
    fn asymmetric_updates_are_witnessed_with_the_moving_element() {
        let rep = swap_rep();
        let report =
            check_update_invariance(|x| vec![0.9 * x[0], x[1]], &rep, 16, 0, ALG_TOL);
        assert_eq!(report.status, Status::Fail);
        assert!(report
            .violations
            .iter()
            .all(|v| v.law == "update-invariance" && v.witness[0] == "r1"));
    }

    #[test]
    fn canonical_pick_is_the_smallest_rotation() {
        let rep = cycle_rep(4);
        // The matrix for g shifts entries forward; the orbit of (3,1,2,0)
        // contains (0,3,1,2), which is lexicographically smallest.
        let canon = canonical_representative(&rep, &[3.0, 1.0, 2.0, 0.0]).unwrap();
        assert_eq!(canon, vec![0.0, 3.0, 1.0, 2.0]);
    }

    #[test]
    fn reduction_laws_hold_exactly_for_permutation_representations() {
        for rep in [swap_rep(), cycle_rep(3), cycle_rep(4)] {
            let report = check_reduction_optimality(&rep, 24, 0, 0.0);
            assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        }
    }

    #[test]
    fn regularizer_is_orbit_constant_and_vanishes_on_averages() {
        let report = check_regularizer(&swap_rep(), 24, 0, 1e-9).unwrap();
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        assert!(report.metrics["max_projection_residual"] <= 1e-18);
    }

    #[test]
    fn linear_enriched_morphisms_are_checked_against_both_actions() {
        let rep = swap_rep();
        let src = EnrichedObject::Linear(rep.clone());
        let dst = EnrichedObject::Linear(rep);
        // The averaging matrix intertwines.
        let ok = EnrichedMorphism::Linear(Mat::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]));
        let report = check_enriched_morphism(&src, &dst, &ok, ALG_TOL).unwrap();
        assert_eq!(report.status, Status::Pass);
        // A projection onto the first coordinate does not.
        let bad = EnrichedMorphism::Linear(Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]));
        let report = check_enriched_morphism(&src, &dst, &bad, ALG_TOL).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(report.violations.iter().any(|v| v.law == "morphism-equivariance"));
    }

    #[test]
    fn categorical_enriched_morphisms_compare_composites_exactly() {
        use crate::fincat::FinCategory;
        let cat = FinCategory::parallel_pair();
        let group = FinGroup::cyclic(2);
        let swap = FinFunctor { obj_map: vec![0, 1], mor_map: vec![0, 2, 1, 3] };
        let action = CatAction {
            group: group.clone(),
            cat: cat.clone(),
            functors: vec![FinFunctor::identity(&cat), swap],
        };
        let src = EnrichedObject::Categorical(action.clone());
        let dst = EnrichedObject::Categorical(action);
        // The identity functor commutes with the action.
        let ok = EnrichedMorphism::Categorical(FinFunctor::identity(&cat));
        let report = check_enriched_morphism(&src, &dst, &ok, 0.0).unwrap();
        assert_eq!(report.status, Status::Pass, "{:?}", report.violations);
        // Collapsing the parallel arrows onto u is a functor but does not
        // commute with the swap.
        let bad = EnrichedMorphism::Categorical(FinFunctor {
            obj_map: vec![0, 1],
            mor_map: vec![0, 1, 1, 3],
        });
        let report = check_enriched_morphism(&src, &dst, &bad, 0.0).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(report.violations.iter().any(|v| v.law == "morphism-equivariance"));
    }

    #[test]
    fn flavor_mismatch_is_an_error_not_a_violation() {
        let rep = swap_rep();
        let src = EnrichedObject::Linear(rep.clone());
        let dst = EnrichedObject::Linear(rep);
        let map = EnrichedMorphism::Linear(Mat::identity(3));
        assert!(matches!(
            check_enriched_morphism(&src, &dst, &map, 1e-9),
            Err(EnrichedError::Incompatible(_))
        ));
    }
}

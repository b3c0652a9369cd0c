//! Fixed points of symmetry-compatible updates, with the symmetry of the
//! found point checked rather than assumed.

use super::fixed::{banach_iterate, FixedPoint};
use super::OptError;
use crate::enriched::check_update_invariance;
use crate::mat::linf_diff;
use crate::report::{LawReport, Status, Violation};
use crate::symgrp::Representation;
use crate::ALG_TOL;

/// A fixed point together with how symmetric it actually is.
#[derive(Debug, Clone)]
pub struct MetaFixedPoint {
    pub fixed_point: FixedPoint,
    /// max over group elements of |g.point - point| in the max norm.
    pub defect: f64,
    /// Pass when the defect stays within 10x the iteration tolerance; a
    /// `hypothesis-unmet` flag records that the update itself failed its
    /// invariance spot-check, in which case an asymmetric fixed point is
    /// expected rather than surprising.
    pub report: LawReport,
}

/// Iterates `update` to a fixed point and measures how far that point is
/// from being fixed by every group element. The update is first spot-checked
/// for invariance (32 samples, seed 0); failure does not abort, it only
/// flags the report, because the interesting output is the witnessed
/// asymmetry of the result.
pub fn meta_fixed_point<U: Fn(&[f64]) -> Vec<f64>>(
    update: U,
    rep: &Representation,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<MetaFixedPoint, OptError> {
    let invariance = check_update_invariance(&update, rep, 32, 0, ALG_TOL);
    let hypothesis_unmet = invariance.status == Status::Fail;

    let fixed_point = banach_iterate(&update, x0, tol, max_iter)?;

    let mut violations = Vec::new();
    let mut defect: f64 = 0.0;
    let bound = 10.0 * tol;
    for g in 0..rep.group.order() {
        let moved = rep.apply(g, &fixed_point.point);
        let d = linf_diff(&moved, &fixed_point.point);
        defect = defect.max(d);
        if !(d <= bound) {
            violations.push(Violation::new("fixed-point-symmetry", vec![rep.group.name(g)]));
        }
    }

    let cases = rep.group.order() as u64;
    let mut report = LawReport::new("meta-fixed-point", violations, cases)
        .with_metric("defect", defect)
        .with_metric("residual", fixed_point.residual)
        .with_metric("iterations", fixed_point.iterations as f64);
    if hypothesis_unmet {
        report = report.with_flag("hypothesis-unmet");
    }

    Ok(MetaFixedPoint { fixed_point, defect, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::Mat;
    use crate::symgrp::FinGroup;

    fn swap_rep() -> Representation {
        Representation {
            group: FinGroup::cyclic(2),
            dim: 2,
            mats: vec![Mat::identity(2), Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])],
        }
    }

    #[test]
    fn symmetric_contraction_lands_on_a_symmetric_point() {
        // F(x) = x/2 + (1, 1): commutes with the swap, fixed point (2, 2).
        let fp = meta_fixed_point(
            |x: &[f64]| vec![0.5 * x[0] + 1.0, 0.5 * x[1] + 1.0],
            &swap_rep(),
            &[5.0, -3.0],
            1e-10,
            200,
        )
        .unwrap();
        assert_eq!(fp.report.status, Status::Pass, "{:?}", fp.report);
        assert!(fp.defect <= 1e-9);
        assert!(!fp.report.flags.iter().any(|f| f == "hypothesis-unmet"));
        assert!((fp.fixed_point.point[0] - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn asymmetric_update_is_flagged_and_its_point_witnessed() {
        // F(x) = x/2 + (1, 0): not swap-invariant; fixed point (2, 0) moves
        // under the swap.
        let fp = meta_fixed_point(
            |x: &[f64]| vec![0.5 * x[0] + 1.0, 0.5 * x[1]],
            &swap_rep(),
            &[0.0, 0.0],
            1e-10,
            200,
        )
        .unwrap();
        assert_eq!(fp.report.status, Status::Fail);
        assert!(fp.report.flags.iter().any(|f| f == "hypothesis-unmet"));
        assert!((fp.defect - 2.0).abs() <= 1e-8);
        assert!(fp
            .report
            .violations
            .iter()
            .any(|v| v.law == "fixed-point-symmetry" && v.witness == vec!["r1"]));
    }

    #[test]
    fn divergence_propagates_as_an_error() {
        let err = meta_fixed_point(
            |x: &[f64]| vec![2.0 * x[0] + 1.0, 2.0 * x[1]],
            &swap_rep(),
            &[1.0, 1.0],
            1e-10,
            30,
        );
        assert!(matches!(err, Err(OptError::NonConvergence { .. })));
    }
}

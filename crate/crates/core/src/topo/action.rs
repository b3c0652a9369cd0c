//! Group actions on complexes and the invariance of persistence under them.

use super::complex::{simplex_label, Filtration, SimplicialComplex};
use super::persistence::persistence;
use super::TopoError;
use crate::report::{LawReport, Violation};
use crate::symgrp::SetAction;

/// A group acting on a complex through vertex permutations. The underlying
/// `SetAction` carries the group and the per-element vertex maps; being
/// simplicial (mapping simplices to simplices) is a property relative to a
/// complex, checked by `validate_on` or enforced by the checkers below.
#[derive(Debug, Clone)]
pub struct ComplexAction {
    pub action: SetAction,
}

impl ComplexAction {
    pub fn new(action: SetAction) -> Self {
        ComplexAction { action }
    }

    /// Image of a simplex under element `g`, re-sorted. The image of a valid
    /// simplex under a non-injective vertex map can contain repeats; callers
    /// detect that by failing to find it in the complex.
    pub fn map_simplex(&self, g: usize, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|&v| self.action.apply(g, v)).collect();
        out.sort_unstable();
        out
    }

    /// Underlying action laws plus: every group element maps every simplex
    /// of `k` to a simplex of `k`.
    pub fn validate_on(&self, k: &SimplicialComplex) -> LawReport {
        let base = self.action.validate();
        let mut violations = base.violations;
        let mut cases = base.cases;
        if k.n_vertices() > self.action.n_points() {
            violations.push(Violation::new(
                "vertex-range",
                [format!(
                    "complex uses {} vertices, action moves {}",
                    k.n_vertices(),
                    self.action.n_points()
                )],
            ));
        } else {
            for g in 0..self.action.group.order() {
                for s in &k.simplices {
                    cases += 1;
                    let image = self.map_simplex(g, s);
                    if k.position(&image).is_none() {
                        violations.push(Violation::new(
                            "action-simplicial",
                            [self.action.group.name(g).to_string(), simplex_label(s)],
                        ));
                    }
                }
            }
        }
        LawReport::new("complex-action", violations, cases)
    }

    fn require_simplicial(&self, k: &SimplicialComplex) -> Result<(), TopoError> {
        if k.n_vertices() > self.action.n_points() {
            return Err(TopoError::MalformedDocument(format!(
                "complex uses {} vertices, action moves {}",
                k.n_vertices(),
                self.action.n_points()
            )));
        }
        for g in 0..self.action.group.order() {
            for s in &k.simplices {
                if k.position(&self.map_simplex(g, s)).is_none() {
                    return Err(TopoError::ActionNotSimplicial {
                        element: self.action.group.name(g).to_string(),
                        simplex: simplex_label(s),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The filtration is equivariant when every simplex carries the same value
/// as its image: value(g.s) = value(s), exactly.
pub fn check_equivariant_filtration(
    act: &ComplexAction,
    f: &Filtration,
) -> Result<LawReport, TopoError> {
    act.require_simplicial(&f.complex)?;
    let mut violations = Vec::new();
    let mut max_gap: f64 = 0.0;
    let mut cases = 0u64;
    for g in 0..act.action.group.order() {
        for (i, s) in f.complex.simplices.iter().enumerate() {
            cases += 1;
            let j = f
                .complex
                .position(&act.map_simplex(g, s))
                .expect("checked simplicial above");
            max_gap = max_gap.max((f.values[i] - f.values[j]).abs());
            if f.values[i] != f.values[j] {
                violations.push(Violation::new(
                    "filtration-equivariance",
                    [
                        act.action.group.name(g).to_string(),
                        simplex_label(s),
                        format!("{} vs {}", f.values[i], f.values[j]),
                    ],
                ));
            }
        }
    }
    let mut report = LawReport::new("equivariant-filtration", violations, cases)
        .with_metric("max_value_gap", max_gap);
    report.truncate_violations(32);
    Ok(report)
}

/// Compares the diagram of `f` with the diagrams of its pullbacks
/// s -> value(g.s), as exact multisets.
///
/// For a genuinely simplicial action this always passes: each pullback is
/// the original filtration relabelled by an automorphism, so the filtered
/// complexes are isomorphic and their diagrams coincide. The check still
/// recomputes everything; a mismatch would expose a defect in the reduction
/// itself, and is additionally cross-flagged as "corollary-breach" when the
/// value-level equivariance check passed.
pub fn diagram_invariance(act: &ComplexAction, f: &Filtration) -> Result<LawReport, TopoError> {
    act.require_simplicial(&f.complex)?;
    let base = persistence(f);
    let mut violations = Vec::new();
    let mut any_diagram_mismatch = false;
    for g in 0..act.action.group.order() {
        let pulled_values: Vec<f64> = f
            .complex
            .simplices
            .iter()
            .map(|s| {
                f.values[f
                    .complex
                    .position(&act.map_simplex(g, s))
                    .expect("checked simplicial above")]
            })
            .collect();
        let pulled = Filtration { complex: f.complex.clone(), values: pulled_values };
        let diag = persistence(&pulled);
        if !diag.multiset_eq(&base) {
            any_diagram_mismatch = true;
            violations.push(Violation::new(
                "diagram-invariance",
                [
                    act.action.group.name(g).to_string(),
                    format!("base {}", base.compact()),
                    format!("pulled {}", diag.compact()),
                ],
            ));
        }
    }
    let equivariant = check_equivariant_filtration(act, f)?.passed();
    if equivariant && any_diagram_mismatch {
        violations.push(Violation::new(
            "corollary-breach",
            ["equivariant filtration produced a non-invariant diagram".to_string()],
        ));
    }
    let mut report = LawReport::new(
        "diagram-invariance",
        violations,
        act.action.group.order() as u64,
    );
    if !equivariant && !any_diagram_mismatch {
        report = report.with_flag("diagrams-invariant-without-equivariance");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::complex::{ComplexData, FiltrationData};
    use crate::report::Status;
    use crate::symgrp::{FinGroup, SetAction};

    fn triangle(values: Vec<f64>) -> Filtration {
        Filtration::from_doc(&FiltrationData {
            complex: ComplexData {
                simplices: vec![
                    vec![0],
                    vec![1],
                    vec![2],
                    vec![0, 1],
                    vec![0, 2],
                    vec![1, 2],
                    vec![0, 1, 2],
                ],
            },
            values,
        })
        .unwrap()
    }

    fn rotation_action() -> ComplexAction {
        let group = FinGroup::cyclic(3);
        ComplexAction::new(SetAction {
            group,
            points: vec!["0".into(), "1".into(), "2".into()],
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        })
    }

    #[test]
    fn symmetric_triangle_filtration_is_equivariant() {
        let f = triangle(vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0]);
        let act = rotation_action();
        assert_eq!(act.validate_on(&f.complex).status, Status::Pass);
        let eq = check_equivariant_filtration(&act, &f).unwrap();
        assert_eq!(eq.status, Status::Pass);
        let di = diagram_invariance(&act, &f).unwrap();
        assert_eq!(di.status, Status::Pass, "{:?}", di.violations);
        assert!(di.flags.is_empty());
    }

    #[test]
    fn perturbed_edge_value_is_detected_with_a_witness() {
        let f = triangle(vec![0.0, 0.0, 0.0, 1.1, 1.0, 1.0, 2.0]);
        let eq = check_equivariant_filtration(&rotation_action(), &f).unwrap();
        assert_eq!(eq.status, Status::Fail);
        assert!(eq
            .violations
            .iter()
            .any(|v| v.law == "filtration-equivariance" && v.witness[1] == "{0,1}"));
        assert!(eq.metrics["max_value_gap"] > 0.09);
    }

    #[test]
    fn pullback_by_an_automorphism_never_changes_the_diagram() {
        // The filtration is not equivariant (edge values differ), yet every
        // pullback is an isomorphic filtered complex, so the diagrams agree
        // and the report records that via a flag rather than a violation.
        let f = triangle(vec![0.0, 0.0, 0.0, 1.0, 1.5, 2.0, 2.5]);
        let act = rotation_action();
        assert_eq!(
            check_equivariant_filtration(&act, &f).unwrap().status,
            Status::Fail
        );
        let di = diagram_invariance(&act, &f).unwrap();
        assert_eq!(di.status, Status::Pass, "{:?}", di.violations);
        assert!(di.flags.iter().any(|fl| fl == "diagrams-invariant-without-equivariance"));
    }

    #[test]
    fn trivial_group_passes_vacuously() {
        let f = triangle(vec![0.0, 0.1, 0.2, 1.0, 1.5, 2.0, 2.5]);
        let act = ComplexAction::new(SetAction {
            group: FinGroup::cyclic(1),
            points: vec!["0".into(), "1".into(), "2".into()],
            table: vec![vec![0, 1, 2]],
        });
        assert_eq!(check_equivariant_filtration(&act, &f).unwrap().status, Status::Pass);
        assert_eq!(diagram_invariance(&act, &f).unwrap().status, Status::Pass);
    }

    #[test]
    fn non_simplicial_maps_are_refused() {
        // Swap of vertices 0 and 1 on a complex that only has the edge {0,2}:
        // the image {1,2} is missing.
        let k = SimplicialComplex::from_simplices(vec![vec![0], vec![1], vec![2], vec![0, 2]])
            .unwrap();
        let f = Filtration { complex: k.clone(), values: vec![0.0, 0.0, 0.0, 1.0] };
        let act = ComplexAction::new(SetAction {
            group: FinGroup::cyclic(2),
            points: vec!["0".into(), "1".into(), "2".into()],
            table: vec![vec![0, 1, 2], vec![1, 0, 2]],
        });
        let report = act.validate_on(&k);
        assert_eq!(report.status, Status::Fail);
        assert!(report.violations.iter().any(|v| v.law == "action-simplicial"));
        assert!(matches!(
            check_equivariant_filtration(&act, &f),
            Err(TopoError::ActionNotSimplicial { .. })
        ));
    }
}

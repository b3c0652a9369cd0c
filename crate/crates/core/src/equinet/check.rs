//! End-to-end model equivariance checking.

use super::layer::DenseModel;
use super::EquinetError;
use crate::mat::linf_diff;
use crate::report::{LawReport, Violation};
use crate::rng::CounterRng;
use crate::symgrp::Representation;

/// Checks f(g.x) = g.f(x) on seeded samples for every group element.
///
/// For purely linear models the collapsed weight matrix and the net bias are
/// additionally checked algebraically, which certifies equivariance for all
/// inputs rather than the sampled ones. Models with nonlinear activations
/// are only accepted when both boundary representations are permutation
/// matrices: pointwise nonlinearities commute with permutations, so sampling
/// is meaningful evidence there, while for general matrices no finite sample
/// certifies anything and the check refuses instead.
pub fn check_model_equivariance(
    model: &DenseModel,
    rep_in: &Representation,
    rep_out: &Representation,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<LawReport, EquinetError> {
    if rep_in.group.order() != rep_out.group.order() {
        return Err(EquinetError::GroupMismatch(format!(
            "orders {} and {}",
            rep_in.group.order(),
            rep_out.group.order()
        )));
    }
    if model.in_dim() != rep_in.dim || model.out_dim() != rep_out.dim {
        return Err(EquinetError::Shape(format!(
            "model maps {} -> {}, representations want {} -> {}",
            model.in_dim(),
            model.out_dim(),
            rep_in.dim,
            rep_out.dim
        )));
    }
    if model.has_nonlinearity()
        && !(rep_in.is_permutation_rep() && rep_out.is_permutation_rep())
    {
        return Err(EquinetError::NonPermutationWithNonlinearity);
    }

    let mut violations = Vec::new();
    let mut cases = 0u64;
    let mut max_defect: f64 = 0.0;

    if let Some(w) = model.collapsed_weights() {
        // Net bias of the affine composite: value at zero.
        let bias = model.forward_f64(&vec![0.0; model.in_dim()]);
        for g in 0..rep_in.group.order() {
            cases += 2;
            let lhs = rep_out.mat(g).matmul(&w);
            let rhs = w.matmul(rep_in.mat(g));
            if !lhs.approx_eq(&rhs, tol) {
                violations.push(Violation::new(
                    "weight-intertwining",
                    vec![rep_in.group.name(g)],
                ));
            }
            let moved = rep_out.apply(g, &bias);
            if !(linf_diff(&moved, &bias) <= tol) {
                violations.push(Violation::new("bias-fixed", vec![rep_in.group.name(g)]));
            }
        }
    }

    let mut rng = CounterRng::stream(seed, 9);
    for i in 0..n_samples {
        let x = rng.normal_vec(rep_in.dim);
        let fx = model.forward_f64(&x);
        for g in 0..rep_in.group.order() {
            cases += 1;
            let lhs = model.forward_f64(&rep_in.apply(g, &x));
            let rhs = rep_out.apply(g, &fx);
            let defect = linf_diff(&lhs, &rhs);
            max_defect = max_defect.max(defect);
            if !(defect <= tol) {
                violations.push(Violation::new(
                    "model-equivariance",
                    vec![rep_in.group.name(g).to_string(), format!("sample{}", i)],
                ));
            }
        }
    }

    Ok(LawReport::new("model-equivariance", violations, cases)
        .with_metric("max_defect", max_defect))
}

//! Loss stability under symmetry-shaped perturbations.

use serde::{Deserialize, Serialize};

use super::layer::DenseModel;
use super::EquinetError;
use crate::mat::l2;
use crate::optdyn::{DiffFunction, LossFn};
use crate::report::{LawReport, Violation};
use crate::rng::CounterRng;
use crate::symgrp::{fixed_subspace, Representation};

/// Shape of the probing perturbations.
///
/// `Orbit` replaces x with points on its orbit (x + delta_g where
/// delta_g = rho(g)x - x), so for a model constant on orbits the loss change
/// is exactly zero and any excess is a genuine violation. `Fixed` draws
/// perturbations from the fixed subspace of the representation; nothing
/// forces the loss to be flat along those, so that mode only measures and
/// reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdvMode {
    Orbit,
    Fixed,
}

/// Probes |L(x + delta) - L(x)| for the composite loss L = loss(model(.)).
///
/// Orbit mode enumerates the whole group and fails on any change above tol;
/// fixed mode samples `n_samples` directions of norm eps from the fixed
/// subspace and records the worst change as a metric without judging it.
pub fn adversarial_invariance(
    model: &DenseModel,
    loss: &LossFn,
    rep: &Representation,
    x: &[f64],
    mode: AdvMode,
    eps: f64,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<LawReport, EquinetError> {
    if x.len() != rep.dim {
        return Err(EquinetError::Shape(format!(
            "point has {} coordinates, representation has {}",
            x.len(),
            rep.dim
        )));
    }
    if model.in_dim() != rep.dim {
        return Err(EquinetError::Shape(format!(
            "model takes {} inputs, representation has {}",
            model.in_dim(),
            rep.dim
        )));
    }
    let composite = |p: &[f64]| loss.value(&model.forward_f64(p));
    let base = composite(x);

    match mode {
        AdvMode::Orbit => {
            let mut violations = Vec::new();
            let mut max_delta: f64 = 0.0;
            for g in 0..rep.group.order() {
                let moved = rep.mat(g).matvec(x);
                let delta = (composite(&moved) - base).abs();
                max_delta = max_delta.max(delta);
                if !(delta <= tol) {
                    violations.push(Violation::new(
                        "orbit-loss-invariance",
                        [rep.group.name(g).to_string(), format!("|dL| = {:.3e}", delta)],
                    ));
                }
            }
            Ok(
                LawReport::new("adversarial-orbit", violations, rep.group.order() as u64)
                    .with_metric("max_delta", max_delta)
                    .with_metric("base_loss", base),
            )
        }
        AdvMode::Fixed => {
            let basis = fixed_subspace(rep).map_err(EquinetError::Sym)?;
            let mut rng = CounterRng::stream(seed, 11);
            let mut max_delta: f64 = 0.0;
            for _ in 0..n_samples {
                let mut delta = vec![0.0; rep.dim];
                for b in &basis {
                    let c = rng.normal();
                    for (d, bi) in delta.iter_mut().zip(b) {
                        *d += c * bi;
                    }
                }
                let norm = l2(&delta);
                let probe: Vec<f64> = if norm > 1e-300 {
                    x.iter().zip(&delta).map(|(xi, di)| xi + eps * di / norm).collect()
                } else {
                    x.to_vec()
                };
                max_delta = max_delta.max((composite(&probe) - base).abs());
            }
            let mut report = LawReport::pass("adversarial-fixed", n_samples as u64)
                .with_flag("report-only")
                .with_metric("max_delta", max_delta)
                .with_metric("eps", eps)
                .with_metric("base_loss", base);
            if basis.is_empty() {
                report = report.with_flag("zero-fixed-subspace");
            }
            Ok(report)
        }
    }
}

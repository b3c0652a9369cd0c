//! Contraction estimation on a sampled box and fixed points by iteration.

use serde::{Deserialize, Serialize};

use super::OptError;
use crate::mat::linf_diff;
use crate::rng::CounterRng;

/// Evidence (not proof) that a map contracts on a box: the largest observed
/// ratio d(F(x), F(y)) / d(x, y) over sampled pairs, max-norm distances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContractionCertificate {
    /// Pairs that actually contributed a ratio.
    pub pairs: usize,
    pub max_ratio: f64,
    /// Pairs skipped because the sampled points were (numerically)
    /// identical.
    pub degenerate_skipped: usize,
    /// Description of how points were drawn, for the record.
    pub sampler: String,
    pub seed: u64,
}

/// Samples pairs uniformly from the axis-aligned box [lo, hi] and records
/// the worst expansion ratio of `map`.
pub fn estimate_contraction<F: Fn(&[f64]) -> Vec<f64>>(
    map: F,
    lo: &[f64],
    hi: &[f64],
    n_pairs: usize,
    seed: u64,
) -> ContractionCertificate {
    assert_eq!(lo.len(), hi.len(), "box bounds must share a dimension");
    let dim = lo.len();
    let mut rng = CounterRng::stream(seed, 4);
    let sample = |rng: &mut CounterRng| -> Vec<f64> {
        (0..dim).map(|i| lo[i] + rng.uniform() * (hi[i] - lo[i])).collect()
    };
    let mut max_ratio: f64 = 0.0;
    let mut pairs = 0usize;
    let mut degenerate_skipped = 0usize;
    for _ in 0..n_pairs {
        let x = sample(&mut rng);
        let y = sample(&mut rng);
        let base = linf_diff(&x, &y);
        if base < 1e-12 {
            degenerate_skipped += 1;
            continue;
        }
        let ratio = linf_diff(&map(&x), &map(&y)) / base;
        max_ratio = max_ratio.max(ratio);
        pairs += 1;
    }
    ContractionCertificate {
        pairs,
        max_ratio,
        degenerate_skipped,
        sampler: format!("uniform-box-dim{}", dim),
        seed,
    }
}

/// A located fixed point with the residual history that led to it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPoint {
    pub point: Vec<f64>,
    /// Max-norm distance between the point and its image.
    pub residual: f64,
    /// Update steps actually applied; 0 when the start already sits within
    /// tolerance.
    pub iterations: usize,
    /// Residual before each step, ending with the accepted one.
    pub residuals: Vec<f64>,
}

/// Iterates x <- F(x) until the residual |F(x) - x| (max norm) falls to
/// `tol`, or errors with the full history after `max_iter` steps.
pub fn banach_iterate<F: Fn(&[f64]) -> Vec<f64>>(
    map: F,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<FixedPoint, OptError> {
    let mut x = x0.to_vec();
    let mut residuals = Vec::new();
    for iterations in 0..=max_iter {
        let fx = map(&x);
        let residual = linf_diff(&fx, &x);
        residuals.push(residual);
        if residual <= tol {
            return Ok(FixedPoint { point: x, residual, iterations, residuals });
        }
        if iterations == max_iter {
            break;
        }
        x = fx;
    }
    Err(OptError::NonConvergence {
        iterations: max_iter,
        last_residual: *residuals.last().unwrap_or(&f64::NAN),
        last: x,
        residuals,
    })
}

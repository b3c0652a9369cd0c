//! Differentiable optimization dynamics: order-2 forward differentiation,
//! discrete flows and their algebraic laws, contraction estimates, fixed
//! point iteration, convergence detection on recorded trajectories, and the
//! symmetry-compatible meta fixed point.

mod converge;
mod diff;
mod dual;
mod fixed;
mod flow;
mod meta;

pub use converge::detect_convergence;
pub use diff::{fd_gradient, DiffFunction, LossFn, SmoothFn};
pub use dual::{Dual2, Real};
pub use fixed::{banach_iterate, estimate_contraction, ContractionCertificate, FixedPoint};
pub use flow::{check_flow_equivariance, check_semigroup, FlowMap};
pub use meta::{meta_fixed_point, MetaFixedPoint};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptError {
    /// The iteration ran out of steps before the residual fell under the
    /// tolerance. Carries the full residual history for diagnosis.
    #[error("no fixed point within {iterations} iterations; last residual {last_residual:.3e}")]
    NonConvergence { iterations: usize, last_residual: f64, last: Vec<f64>, residuals: Vec<f64> },
    /// Vector sizes do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

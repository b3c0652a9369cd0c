//! Physics-informed training on a 1D Poisson problem: collocation residual
//! losses with boundary penalties, exact symmetrization of a network ansatz
//! under reflection, and a baseline-vs-symmetrized comparison trainer.

mod model;
mod train;

pub use model::{residual_loss, symmetrize, Ansatz, Equation, PdeSpec, SourceFn};
pub use train::{
    train, train_compare, CompareReport, ThresholdCrossing, TrainConfig, TrainReport,
    DEFAULT_LR, DEFAULT_WSCALE,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PinnError {
    /// Reflection symmetrization needs a domain of the form [-c, c].
    #[error("domain [{a}, {b}] is not symmetric about zero")]
    AsymmetricDomain { a: f64, b: f64 },
    /// A loss or training step left the representable range. During training
    /// the finite prefix of the run is attached; its curves stop at the last
    /// finite step and its summary fields may themselves be non-finite.
    #[error("non-finite value in {context}")]
    NonFinite {
        context: String,
        partial: Option<Box<TrainReport>>,
    },
    #[error("malformed pde specification: {0}")]
    MalformedSpec(String),
}

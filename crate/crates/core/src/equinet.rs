//! Dense networks with symmetry: constructing equivariant layers, checking
//! models against representations, tying weights along orbits, fitting
//! invariant targets, and probing invariance adversarially.

mod adversarial;
mod check;
mod compress;
mod fit;
mod layer;

pub use adversarial::{adversarial_invariance, AdvMode};
pub use check::check_model_equivariance;
pub use compress::{compress, layer_from_pattern, CompressionReport, TyingPattern};
pub use fit::{fit_invariant, FitArch, FitOutcome, GRID_N};
pub use layer::{
    build_equivariant_layer, Activation, BuildMode, DenseModel, Layer, LayerData, ModelData,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EquinetError {
    /// Pointwise nonlinearities commute with coordinate permutations and
    /// with nothing else in general, so a model mixing nonlinear activations
    /// with non-permutation boundary representations cannot be certified
    /// here and the check refuses rather than guessing.
    #[error("nonlinear activations require permutation representations on both boundaries")]
    NonPermutationWithNonlinearity,
    /// The two actions or representations do not share a group.
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    /// Matrix and vector sizes do not line up with the declared carriers.
    #[error("shape error: {0}")]
    Shape(String),
    /// The invariant-fit trainer only supports two-dimensional inputs (it
    /// trains on a fixed planar grid).
    #[error("invariant fitting supports dimension 2, got {got}")]
    UnsupportedDim { got: usize },
    #[error(transparent)]
    Sym(#[from] crate::symgrp::SymError),
}

//! Persistent homology on small complexes: validation, boundary-matrix
//! reduction, exact bottleneck distances, and the interaction of filtrations
//! with finite group actions.

mod action;
mod bottleneck;
mod complex;
mod loss;
mod persistence;

pub use action::{check_equivariant_filtration, diagram_invariance, ComplexAction};
pub use bottleneck::{bottleneck, bottleneck_all_dims};
pub use complex::{
    simplex_label, validate_complex, validate_filtration, ComplexData, Filtration,
    FiltrationData, SimplicialComplex,
};
pub use loss::{ph_loss, strict_local_minima, sublevel_persistence_1d, PhLossMode};
pub use persistence::{persistence, Bar, BarData, DiagramData, PersistenceDiagram};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TopoError {
    /// Structurally broken input: unsorted or oversized tuples, duplicate
    /// simplices, misaligned value lists, non-finite numbers.
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    /// A vertex map sent a simplex outside the complex, so pullbacks and
    /// equivariance are undefined.
    #[error("element {element} maps simplex {simplex} outside the complex")]
    ActionNotSimplicial { element: String, simplex: String },
}

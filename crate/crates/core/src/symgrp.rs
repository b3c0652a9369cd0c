//! Finite groups as multiplication tables, their actions on finite sets, and
//! their matrix representations.
//!
//! Everything is exhaustively checkable: group laws by looping over triples,
//! actions by looping over (g, h, point), representations by comparing
//! products of small dense matrices. Averaging over the group (the Reynolds
//! map) and solving the equivariance constraint for linear maps (intertwiner
//! bases) are the two workhorses the network-side modules build on.

mod action;
mod group;
mod rep;

pub use action::{burnside_count, orbits, ActionData, SetAction};
pub use group::{validate_group, FinGroup, GroupData};
pub use rep::{
    fixed_subspace, intertwiner_basis, orbit_distance, reynolds_map, reynolds_vector,
    validate_representation, RepData, Representation,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymError {
    /// The document's shape is wrong: ragged tables, indices out of range,
    /// dimension fields that contradict the data.
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    /// An operation that needs a two-sided identity or inverses was asked of
    /// a table that has none.
    #[error("not a group: {0}")]
    NotAGroup(String),
    /// Fixed points did not sum to a multiple of the group order, so the
    /// orbit count is not an integer; the action laws must already fail.
    #[error("fixed-point total {total} is not divisible by group order {order}")]
    NonIntegralCount { total: u128, order: u128 },
    /// Vector or matrix sizes do not line up with the representation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

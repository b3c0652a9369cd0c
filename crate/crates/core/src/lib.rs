//! Finite, exhaustively checkable models of symmetry in learning systems.
//!
//! Everything here is desk scale on purpose: categories are composition
//! tables, groups are multiplication tables, representations are small dense
//! matrices. At that scale every law a structure claims to satisfy can be
//! checked by enumeration, and every failure can be reported with a witness
//! small enough to replay by hand.
//!
//! Modules:
//! - [`fincat`]: finite categories, functors, natural transformations, and
//!   the 2-truncated endofunctor category with its stability check.
//! - [`symgrp`]: finite groups, set actions, orbit counting, matrix
//!   representations, Reynolds averaging, intertwiner spaces.
//! - [`enriched`]: symmetry-compatibility checks for maps on represented
//!   carriers (update invariance, canonical representatives, regularizers).
//! - [`equinet`]: equivariant dense layers, weight tying, invariant fits,
//!   adversarial invariance probes.
//! - [`optdyn`]: order-2 forward-mode differentiation, contraction
//!   certificates, fixed-point iteration, discrete flows, convergence of
//!   recorded trajectories, equivariant meta fixed points.
//! - [`pinn`]: a 1D Poisson physics-informed training demo with an exactly
//!   symmetrized ansatz.
//! - [`topo`]: filtered simplicial complexes, persistence diagrams,
//!   bottleneck distance, equivariant filtrations.
//! - [`sobj`]: truncated simplicial objects with full identity checking and
//!   nerves of finite categories.

pub mod enriched;
pub mod equinet;
pub mod fincat;
pub mod mat;
pub mod optdyn;
pub mod pinn;
pub mod report;
pub mod rng;
pub mod sobj;
pub mod symgrp;
pub mod topo;

#[cfg(feature = "oracles")]
pub mod oracles;

pub use report::{LawReport, Status, Violation};

/// Default tolerance for algebraic identities checked in floating point
/// (homomorphism defects, naturality of averaged maps, and the like).
pub const ALG_TOL: f64 = 1e-9;

/// Pivot threshold below which elimination treats an entry as zero.
pub const PIV_TOL: f64 = 1e-10;

/// Relative tolerance for agreement between algorithmic and finite-difference
/// gradients.
pub const GRAD_TOL: f64 = 1e-6;

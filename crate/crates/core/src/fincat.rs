//! Finite categories given by explicit composition tables, the functors and
//! natural transformations between them, and the 2-truncated category of
//! endofunctors with its stability check.
//!
//! The split between loading and validation is deliberate: `from_doc`
//! rejects only documents whose references do not resolve (dangling names,
//! conflicting table entries), while every algebraic law lives in a
//! `validate_*` or `check_*` function that returns a [`LawReport`] with
//! witnesses small enough to replay by hand. Corrupted tables therefore load
//! fine and fail loudly, which is what the mutation tests rely on.

mod action;
mod bifunctor;
mod category;
mod functor;
mod hyp;
mod nat;

pub use action::{fixed_subcategory, CatAction, CatActionData, FixedSubcategory};
pub use bifunctor::{check_bifunctor, BifunctorTable};
pub use category::{
    replay_violation, validate_category, CategoryData, FinCategory, Morphism, MorphismData,
};
pub use functor::{check_functor, iso_lift, FinFunctor, FunctorData, IsoLift};
pub use hyp::{check_stability, enumerate_hyp, EndoCat, HYP_BUDGET};
pub use nat::{check_natural, compose_nat, ComposeContext, MapPairData, NatData, NatKind};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FincatError {
    /// References in the document do not resolve: unknown names, duplicate
    /// ids, composition entries whose pair is not even composable, or

    /// conflicting entries for the same pair.
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    /// Enumerating the endofunctor 2-truncation would exceed the work budget.
    #[error("enumeration budget exceeded: about {estimated:.3e} candidates, budget {budget:.1e}")]
    BudgetExceeded { estimated: f64, budget: f64 },
    /// A functor or transformation was queried against an enumeration that
    /// does not contain it.
    #[error("not in the enumerated 2-truncation: {0}")]
    NotInHyp(String),
    /// The isomorphism-lift search needs an isomorphic image pair to start
    /// from.
    #[error("images {fx} and {fy} are not isomorphic, nothing to lift")]
    NotIso { fx: String, fy: String },
    /// A component list does not match the number of objects.
    #[error("expected {expected} components, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// The two transformations do not share the boundary the requested
    /// composition needs.
    #[error("not composable: {0}")]
    NotComposable(String),
}

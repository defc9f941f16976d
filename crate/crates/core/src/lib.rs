//! Exact-arithmetic toolkit for effect algebras and sequential effect algebras.
//!
//! An effect algebra carries a partial commutative associative sum `⊻` with a
//! zero, a complement `a⊥` (the unique element with `a ⊻ a⊥ = 1`), and the
//! rule that only `0` is summable with `1`. A *sequential* effect algebra
//! additionally carries a product `a ∘ b` ("first a, then b") subject to the
//! axioms checked by [`sequential::check_sea_axioms`].
//!
//! The crate provides:
//!
//! - [`ea`]: finite effect-algebra tables, axiom verification, and the order
//!   theory derived from the sum (including Boolean-algebra detection).
//! - [`models`]: a family of concrete models (finite tables, Boolean algebras
//!   of sets, the rational unit interval, an interval of 2×2 rational
//!   matrices, horizontal sums, direct sums, corners) with exact element
//!   arithmetic and deterministic enumeration/sampling.
//! - [`sequential`]: sequential-product axiom checking, effect-monoid
//!   checking, commutants, centers, floors, halves, division, square roots.
//! - [`structure`]: a-convex actions, convexity classification, the
//!   Boolean ⊕ convex ⊕ purely-a-convex decomposition, associativity
//!   analysis, and bicommutant shape reports.
//! - [`search`]: exhaustive search for all sequential products (or effect
//!   monoid structures) on a finite effect-algebra table, with an
//!   independent naive oracle and a corollary verifier.
//!
//! All arithmetic is exact (arbitrary-precision rationals); nothing in the
//! crate uses floating point.

pub mod ea;
pub mod models;
pub mod rational;
pub mod report;
pub mod search;
pub mod sequential;
pub mod structure;

pub use ea::{FiniteEaTable, OrderRelation};
pub use models::{Elem, ModelExpr};
pub use rational::{Mat2, Rat};
pub use report::{ValidationReport, Violation};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A finite table is malformed (index out of range, conflicting entries, ...).
    #[error("structural defect: {0}")]
    Structure(String),
    /// An element value does not have the shape required by the model family.
    #[error("element/family mismatch: {0}")]
    FamilyMismatch(String),
    /// The model has no sequential product attached.
    #[error("no sequential product: {0}")]
    NoProduct(String),
    /// A finite carrier is larger than the enumeration budget.
    #[error("carrier size {size} exceeds enumeration budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    /// The sampling budget cannot hold the mandatory sample points.
    #[error("budget {budget} too small: {required} mandatory sample points")]
    BudgetTooSmall { budget: usize, required: usize },
    /// Division requires `floor(a) = 0`; the hypothesis failed.
    #[error("cannot divide {elem}: unique division requires floor(a) = 0, but floor = {floor}")]
    FloorNotZero { elem: String, floor: String },
    /// The operation has no rule registered for this family.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The search was asked to handle a table above its size bound.
    #[error("table size {size} exceeds search bound {bound}")]
    SearchSizeExceeded { size: usize, bound: usize },
    /// An idempotent was required (corner construction, ...).
    #[error("{context}: {elem} is not idempotent")]
    NotIdempotent { context: String, elem: String },
    /// A candidate unit embedding failed additivity or unitality.
    #[error("not an additive unit embedding: {0}")]
    NotAdditive(String),
    /// Decomposition reached a leaf it cannot split.
    #[error("cannot decompose leaf: {0}")]
    CannotDecompose(String),
    /// A model expression violates a construction-time rule.
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error types shared across the crate.
//!
//! Every fallible operation returns a value of one of these types rather than
//! panicking: dimension mismatches, invalid structure constants, inconsistent
//! linear systems and enumeration blow-ups are all ordinary, reportable
//! outcomes for a verification engine.

use thiserror::Error;

/// Errors raised by the dense linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    /// Two matrices were combined with incompatible shapes.
    #[error("{op}: dimension mismatch, left is {lhs_rows}x{lhs_cols}, right is {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    /// Two matrices over different prime fields were combined.
    #[error("{op}: modulus mismatch, left is mod {lhs}, right is mod {rhs}")]
    ModulusMismatch { op: &'static str, lhs: u64, rhs: u64 },
    /// A square matrix was required.
    #[error("{op}: matrix is {rows}x{cols}, expected square")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    /// A matrix literal had ragged or otherwise unusable shape.
    #[error("bad matrix shape: {reason}")]
    BadShape { reason: String },
    /// The modulus is not a prime in the supported range.
    #[error("modulus {p} is not a prime below 2^31")]
    BadModulus { p: u64 },
}

/// Errors raised while building or combining algebraic structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    /// Structure constants, action tables or unit vectors had the wrong shape.
    #[error("invalid {what}: {reason}")]
    InvalidData { what: &'static str, reason: String },
    /// A quiver presentation does not define a finite-dimensional algebra
    /// within the declared path-length bound.
    #[error(
        "quiver presentation is not admissible within length bound {bound}: \
         path `{witness}` of length {len} survives the relations"
    )]
    NotAdmissible {
        bound: usize,
        witness: String,
        len: usize,
    },
    /// A proposed multiplication on a bimodule fails associativity.
    #[error("bimodule multiplication is not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    /// A matrix that was supposed to intertwine module actions does not.
    #[error("map is not a module morphism: fails on algebra basis element {index}")]
    NotAMorphism { index: usize },
    /// An object failed its defining identity.
    #[error("invalid {what}: defining identity fails")]
    InvalidObject { what: &'static str },
    /// Two structures over different algebras (or different fields) were mixed.
    #[error("{op}: structures are over incompatible algebras")]
    IncompatibleAlgebras { op: &'static str },
}

/// Errors raised by enumeration, search and verification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// An enumeration would exceed the configured candidate budget.
    #[error(
        "enumeration of {what} needs {needed} candidates, over the budget of {budget}; \
         raise the budget or shrink the dimension bound"
    )]
    EnumerationBlowup {
        what: String,
        needed: u128,
        budget: u64,
    },
    /// A search that is guaranteed to succeed under the caller's hypotheses
    /// failed, meaning those hypotheses do not hold for the given input.
    #[error("construction of {what} failed: {reason}")]
    ConstructionFailed { what: &'static str, reason: String },
    /// A membership test was requested against a class that cannot be decided
    /// without an enumerated sample.
    #[error(
        "membership in {family} requires comparing against the whole ambient category; \
         provide an enumerated universe (or enable sampled mode) instead"
    )]
    NeedsUniverse { family: String },
    /// A requested object name was not found in the enumerated universe.
    #[error("unknown object name `{name}`")]
    UnknownObject { name: String },
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

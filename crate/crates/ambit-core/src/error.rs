use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// Every operation is total on valid inputs; errors only report invalid
/// inputs or exhausted searches, never numerical trouble (all arithmetic
/// is exact).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} does not belong to this semigroup")]
    InvalidElement { element: String },

    #[error("window of size {requested} exceeds the carrier size {carrier}")]
    WindowTooLarge { requested: usize, carrier: u64 },

    #[error("duplicate element {element} in window")]
    DuplicateInWindow { element: String },

    #[error("malformed multiplication table: {reason}")]
    MalformedTable { reason: String },

    #[error("multiplication table is not associative: first failing triple ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("operands live over different semigroups")]
    HandleMismatch,

    #[error("malformed distance matrix: {reason}")]
    MalformedMatrix { reason: String },

    #[error("pseudometric axiom violated: {reason}")]
    InvalidPseudometric { reason: String },

    #[error("window mismatch: {reason}")]
    WindowMismatch { reason: String },

    #[error("product {x}*{y} has no recorded distance in the metric window")]
    ProductOutsideWindow { x: String, y: String },

    #[error("action law violated at s={s}, s'={s2}, y={y}")]
    ActionLawViolation { s: String, s2: String, y: String },

    #[error("natural-number product overflows the 64-bit encoding")]
    NatOverflow,

    #[error(
        "selection ill-formed: point {point} receives values from neighborhoods {first} and {second}"
    )]
    IllFormedSelection {
        point: String,
        first: usize,
        second: usize,
    },

    #[error("search budget exhausted at neighborhood {index} after {scanned} candidates")]
    BudgetExhausted { index: usize, scanned: u64 },

    #[error("invalid rational literal {literal:?}")]
    BadRational { literal: String },

    #[error("{context}: {reason}")]
    Parse { context: String, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

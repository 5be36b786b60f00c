//! Error type shared across the toolkit.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// Caller handed us something malformed (empty vertex list, ragged
    /// coordinate rows, a point outside the expected simplex, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two objects that must live in the same ambient space do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation needs a full-dimensional polytope and the caller's is not.
    #[error("polytope is not full-dimensional (affine dim {affine_dim} in ambient dim {ambient_dim})")]
    NotFullDimensional { affine_dim: usize, ambient_dim: usize },

    /// A proved inequality failed at runtime. This is a bug in the pipeline,
    /// never a property of the input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// The polytope is not Gorenstein, so duality is undefined for it.
    #[error("polytope is not Gorenstein: {0}")]
    NotGorenstein(String),

    /// Exhaustive search was asked to exceed its configured budget.
    #[error("search budget exceeded: {what} = {actual} > limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// Exact evaluation would materialize more decimal digits than allowed.
    #[error("exact value needs about {estimated_digits} decimal digits, over the budget of {budget}; use digit-count mode or raise CAYLEYKIT_DIGIT_BUDGET")]
    DigitBudgetExceeded {
        estimated_digits: u64,
        budget: u64,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

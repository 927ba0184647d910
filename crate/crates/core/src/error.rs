use thiserror::Error;

use crate::types::Color;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight literal `{0}`")]
    BadWeight(String),

    #[error("{0} side of the type is empty")]
    EmptySide(Color),

    #[error("weight {0} is not positive")]
    NonPositiveWeight(Weight),

    #[error("white weights sum to {white}, black weights sum to {black}")]
    SumMismatch { white: Weight, black: Weight },

    #[error("weight arithmetic overflowed")]
    Overflow,

    #[error("derived weight {weight} of edge {edge} is not positive")]
    NonPositiveEdge { edge: usize, weight: Weight },

    #[error("residual weight {0} left after peeling all leaves")]
    ResidualMismatch(Weight),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("generation budget of {limit} candidates exceeded")]
    ResourceBudget { limit: u64 },

    #[error("expected a non-negative integer, got {0}")]
    NonIntegerResult(String),

    #[error("type is not simple")]
    NotSimple,

    #[error("type has no free vertex positions (s + t - 2 = 0)")]
    DegenerateType,

    #[error("no Newton start converged")]
    NoConvergence,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

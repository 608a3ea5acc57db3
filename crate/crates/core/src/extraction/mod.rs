//! Recovering variety points from lex Gröbner bases of encoded systems,
//! and checking fractional (partial) solutions.

mod pipeline;
mod point;
mod solution;

use thiserror::Error;

use crate::polyring::OrderKind;

pub use pipeline::{assign_from_solution, PipelineOutcome};
pub use point::{extract_point, Coord, VarietyPoint};
pub use solution::{
    select_structurally_constrained, verify_fractional_solution, FractionalSolution, SolutionFormatError, Verdict,
    VerifyMode, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("empty variety: the basis is {{1}}")]
    EmptyVariety,
    #[error("point extraction needs a lex basis, got {0}")]
    NotLex(OrderKind),
    #[error("non-encoder ideal: no value among 0, 1 or free fits variable {0}")]
    NonEncoderIdeal(String),
    #[error("solution has no basis")]
    MissingBasis,
    #[error("basis ring has {ring} variables but the formula has {formula}")]
    VariableCount { ring: usize, formula: usize },
}

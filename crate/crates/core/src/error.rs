use num_complex::Complex64;
use thiserror::Error;

use crate::rational::{display, Rational};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate exponent {}", display(*.0))]
    DuplicateExponent(Rational),

    #[error("exponent {} is not an even integer", display(*.0))]
    NotEvenExponent(Rational),

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rational arithmetic overflow")]
    RationalOverflow,

    #[error("direction {angle} rad lies on a Stokes boundary")]
    StokesBoundary { angle: f64 },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("eigensolver did not converge: {0}")]
    NonConvergence(String),

    #[error("Newton iteration diverged after {iterations} steps (last iterate {last})")]
    NewtonDiverged { last: Complex64, iterations: usize },

    #[error("need {needed} real levels, found {found}")]
    InsufficientLevels { needed: usize, found: usize },

    #[error("malformed document: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

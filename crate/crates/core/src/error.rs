use thiserror::Error;

use crate::pic::DivisorClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HblError {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("rank must be 2 for this operation, got {0}")]
    RankNotTwo(u32),

    #[error("odd intersection product {0}; Chern data is not integral")]
    NonIntegralChern(i64),

    #[error("divisor ({}, {}) is not ample on the surface with e = {e}", .divisor.a, .divisor.b)]
    NotAmple { divisor: DivisorClass, e: u32 },

    #[error("degree mismatch: expected ({}, {}), found ({}, {})", .expected.a, .expected.b, .found.a, .found.b)]
    DegreeMismatch {
        expected: DivisorClass,
        found: DivisorClass,
    },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("complex is malformed: {0}")]
    MalformedComplex(String),

    #[error("monad shapes need e >= 1 (the product of two lines, e = 0, is treated separately); got e = {0}")]
    ZeroTwist(u32),

    #[error("sampling failed after {attempts} attempts: {reason}")]
    SamplingExhausted { attempts: usize, reason: String },

    #[error("fiber splitting disagrees on {disagreeing} of {fibers} fibers")]
    FiberDisagreement { fibers: usize, disagreeing: usize },

    #[error("scan for r found no nonzero section between {upper} and {lower}")]
    ScanExhausted { upper: i64, lower: i64 },

    #[error("matrix too large for desk-scale rank computation (e = {0} > 3)")]
    TooLarge(u32),

    #[error("formula regression: {0}")]
    FormulaMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unbounded non-acyclic monomial pattern {0:#06b}")]
    UnboundedPattern(u8),
}

pub type Result<T, E = HblError> = std::result::Result<T, E>;

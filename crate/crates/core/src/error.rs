use thiserror::Error;

use crate::algebra::AlgebraKind;
use crate::catalog::{SpaceRef, SpectrumId};

/// Errors raised by the series kernels, the catalog and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} lies outside the truncation range 0..={truncation}")]
    Truncation { degree: usize, truncation: usize },

    #[error("truncation degrees differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("constant term {constant} is not a unit")]
    NotInvertible { constant: String },

    #[error("factor of degree 0 in a product family")]
    ZeroDegreeFactor,

    #[error("factor family is not monotone: degree {degree} follows degree {previous}")]
    NonMonotoneFamily { previous: usize, degree: usize },

    #[error("{kind} algebra must have its extensions resolved before taking Tor")]
    UnresolvedExtension { kind: AlgebraKind },

    #[error("expected {expected}, found {found} algebra")]
    InvalidKind {
        expected: &'static str,
        found: AlgebraKind,
    },

    #[error("negative dimension at degree {degree}")]
    NegativeDimension { degree: usize },

    #[error("generator count at degree {degree} does not fit in 64 bits")]
    CountOverflow { degree: usize },

    #[error("rank rule does not apply to {0}: its homotopy has torsion")]
    RankRuleInapplicable(SpectrumId),

    #[error("{space} is not catalogued: {reason}")]
    UnsupportedSpace { space: SpaceRef, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("summand s={s}, K'={k_prime} has negative suspension {suspension}")]
    ConjectureShape {
        s: u64,
        k_prime: u32,
        suspension: i64,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

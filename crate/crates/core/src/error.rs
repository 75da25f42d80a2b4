use thiserror::Error;

use crate::moebius::MoebiusClass;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero quaternion")]
    DivisionByZero,

    #[error("quaternions are not similar (|Re| gap {re_gap:e}, modulus gap {modulus_gap:e})")]
    NotSimilar { re_gap: f64, modulus_gap: f64 },

    #[error("matrix is singular (smallest singular value {sigma_min:e})")]
    Singular { sigma_min: f64 },

    #[error("matrix is not in U(1,1;H) (membership residual {residual:e})")]
    NotMember { residual: f64 },

    #[error("membership drifted after conjugation (residual {residual:e})")]
    MembershipDrift { residual: f64 },

    #[error("no sample of class {class} after {attempts} attempts")]
    HintExhausted { class: MoebiusClass, attempts: usize },

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("negative radicand {value:e} in {context}")]
    NegativeRadicand { context: &'static str, value: f64 },

    #[error("pole hit: |cz+d| = {modulus:e}")]
    PoleHit { modulus: f64 },

    #[error("image left the unit ball: |g(z)| = {modulus}")]
    BallEscape { modulus: f64 },

    #[error("entry pattern b = 0 xor c = 0 is impossible for a group member")]
    InvalidMember,

    #[error("no root of the left-eigenvalue quadratic passed the residual filter")]
    NoRootFound,

    #[error("element is {0}, not elliptic")]
    NotElliptic(MoebiusClass),

    #[error("case mismatch: {0}")]
    CaseMismatch(&'static str),

    #[error("internal assertion `{claim}` failed with residual {residual:e}")]
    AssertionFailure { claim: &'static str, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

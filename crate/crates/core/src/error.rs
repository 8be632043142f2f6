use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised while constructing or evaluating computable numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The inversion witness search hit its cap; the operand may be zero.
    #[error("operand may be zero: no |f(k)| > 1 found for k up to {cap}")]
    PossiblyZero { cap: BigUint },

    /// Seed certification did not succeed within the configured retry ladder.
    #[error("precision exhausted after {depth} refinement rounds: {reason}")]
    PrecisionExhausted { depth: usize, reason: String },

    /// A polynomially increasing sequence never reached the requested element.
    #[error("sequence search exhausted at index {index_cap} before reaching {target}")]
    SequenceExhausted { target: BigUint, index_cap: u64 },

    #[error("malformed polynomially increasing sequence: {0}")]
    InvalidSequence(String),

    #[error("precision must be at least 1")]
    ZeroPrecision,

    #[error("square root of negative number")]
    NegativeSqrt,

    #[error("tolerance must be positive")]
    NonPositiveTolerance,

    #[error("operand is not real")]
    NonRealOperand,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("no sign change on bracket")]
    NoSignChange,

    #[error("polynomial has non-real coefficients")]
    NonRealPolynomial,

    #[error("requested {requested} digits, at most {available} available")]
    DigitsTooLarge { requested: usize, available: usize },

    #[error("arctan_inv needs k >= 2, got {0}")]
    ArctanArgument(u64),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("root index {index} out of range for degree {degree}")]
    RootIndex { index: usize, degree: usize },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("iterate left the certified disc at step {0}")]
    LeftCertifiedDisc(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("denominator has a non-invertible constant term")]
    NonInvertibleConstantTerm,
    #[error("padding {pad} is smaller than the part count {parts}")]
    PadTooSmall { pad: usize, parts: usize },
    #[error("{0} is a classification-only type; no computational data is available")]
    UnsupportedFamily(String),
    #[error("parameter {param} out of range for family {family}")]
    ParameterOutOfRange { family: String, param: usize },
    #[error("group order {order} exceeds the enumeration cap {cap}; rerun with --cap {order} or larger")]
    OrderExceedsCap { order: usize, cap: usize },
    #[error("size mismatch: label has weight {label}, class has weight {class}")]
    SizeMismatch { label: usize, class: usize },
    #[error("class has an odd number of negative cycles and does not lie in W(D_n)")]
    OddNegativeClass,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("character sum produced a non-integral or negative coefficient at t^{degree}")]
    NonIntegralResult { degree: usize },
    #[error("the zero polynomial has no first occurrence")]
    ZeroPolynomial,
    #[error("label {0} needs a split tag (' or \") because alpha = beta")]
    MissingSplitTag(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown group type {0:?}")]
    UnknownType(String),
}

pub type Result<T> = std::result::Result<T, Error>;

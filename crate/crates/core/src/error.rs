use thiserror::Error;

/// Errors raised by the algebra, series and p-adic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at w = {at}: denominator {denominator} vanishes")]
    Pole { at: String, denominator: String },

    #[error("not invertible (delta or higher order)")]
    NotInvertible,

    #[error("composition requires a delta series")]
    NotDelta,

    #[error("reversion requires a delta series with invertible linear term")]
    NotReversible,

    #[error("insufficient precision: need at least {required}, have {available}")]
    InsufficientPrecision { required: usize, available: usize },

    #[error("invalid Sheffer pair: {0}")]
    InvalidPair(&'static str),

    #[error("basis too short: need {required} polynomials, have {available}")]
    BasisTooShort { required: usize, available: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("weight {w} requires |1-w|_p < 1 for p = {p}")]
    InadmissibleWeight { w: String, p: u64 },

    #[error("table does not cover {what}")]
    TableTooSmall { what: String },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

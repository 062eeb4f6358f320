use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("integer overflow in Gaussian-integer arithmetic")]
    Overflow,
    #[error("determinant is not a unit of Z[i]")]
    NonUnitDeterminant,
    #[error("unsupported modulus {0}; only 1+i and 2 are supported")]
    UnsupportedModulus(String),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("argument is not in the upper half plane")]
    NotInUpperHalfPlane,
    #[error("truncation radius {radius} exceeds cap {cap}")]
    TruncationRadiusOverflow { radius: u32, cap: u32 },
    #[error("theta value has imaginary part {imag:e} above threshold {threshold:e}")]
    RealnessViolation { imag: f64, threshold: f64 },
    #[error("C·τ + D is singular")]
    SingularDenominator,
    #[error("matrix does not satisfy g·J·g* = J")]
    NotSymplectic,
    #[error("retry budget exhausted after {draws} draws ({found} of {wanted} found)")]
    BudgetExhausted {
        draws: u64,
        found: usize,
        wanted: usize,
        partial: Vec<crate::groups::GroupElement>,
    },
    #[error("base theta value {0:e} vanishes at the point")]
    BasePointVanishing(f64),
    #[error("no admissible theta tuple found: {0}")]
    NoTupleFound(String),
    #[error("argument outside the domain: {0}")]
    OutOfDomain(String),
    #[error("parameter c = {0} is a pole (non-positive integer)")]
    ParameterPole(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

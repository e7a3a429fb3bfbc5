use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus must be monic of degree {expected}, got {got}")]
    BadModulus { expected: usize, got: usize },
    #[error("modulus is reducible: it has a factor of degree {factor_degree}")]
    ReducibleModulus { factor_degree: usize },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadElementLength { got: usize, expected: usize },
    #[error("coefficient {value} out of range [0, {p})")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("discrete log of zero")]
    ZeroDlog,
    #[error("lookup tables unavailable: q = {q} exceeds the table cap {cap}")]
    TablesUnavailable { q: u64, cap: u64 },
    #[error("count vector has length {got}, expected {expected}")]
    BadCountsLength { got: usize, expected: usize },
    #[error("Galois index must be nonzero mod p")]
    GaloisIndexZero,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("residue must be nonzero mod p")]
    ZeroResidue,
    #[error("p = {0} is outside the stated range (requires p >= 13); use the forced variant to compute anyway")]
    OutsideStatedRange(u64),
    #[error("requested precision {got} exceeds the supported limit {max}")]
    PrecisionTooLarge { got: u32, max: u32 },
    #[error("requires p >= {min}, got p = {got}")]
    PrimeTooSmall { got: u64, min: u64 },
    #[error("extension degree must be even, got {0}")]
    OddDegree(usize),
    #[error("denominator {denominator} is divisible by p = {p}")]
    DenominatorDivisible { denominator: u64, p: u64 },
    #[error("index {index} out of range [{min}, {max}]")]
    IndexOutOfRange { index: u64, min: u64, max: u64 },
    #[error("scan hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

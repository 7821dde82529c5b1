use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedDegree(usize),
    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("Satake parameter {index} is zero or not finite")]
    DegenerateParameter { index: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("weights (k1, k2) = ({k1}, {k2}) do not satisfy k1 = k2 - 2")]
    WeightMismatch { k1: u32, k2: u32 },
    #[error("local factor must have constant term 1")]
    NotNormalized,
    #[error("pole: local factor vanishes at p^-s")]
    Pole,
    #[error("Gamma pole at s = {0}")]
    GammaPole(i64),
    #[error("no entry for prime {p} in record {label}")]
    MissingPrime { label: String, p: u64 },
    #[error("record {label} lacks lambda_(p^2) at p = {p}")]
    MissingSquareEigenvalue { label: String, p: u64 },
    #[error("primes in record {0} are not strictly increasing")]
    UnorderedPrimes(String),
    #[error("Re(s) = {re_s} is not beyond the abscissa {abscissa}")]
    AbscissaViolation { re_s: f64, abscissa: f64 },
    #[error("inverse roots exceed the assumed modulus bound at primes {0:?}")]
    RootModulus(Vec<u64>),
    #[error("{0} is not a critical integer")]
    NotCritical(i64),
    #[error("impure Hodge type")]
    ImpureHodge,
    #[error("exact eigenvalue data required for exact mode")]
    MissingExactData,
    #[error("embedded cusp-form data required for {0}")]
    MissingGamma(&'static str),
    #[error("{0}")]
    Domain(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("exponent unit mismatch: 1/{0} vs 1/{1}")]
    UnitMismatch(u64, u64),
    #[error("coefficient field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u64, u64),
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight system: {0}")]
    InvalidInput(String),
    #[error("({0}) is not a regular system of weights")]
    NotRegular(String),
    #[error("({0}) is not of dual type")]
    NotDualType(String),
    #[error("Coxeter numbers differ: {0} vs {1}")]
    CoxeterMismatch(u64, u64),
    #[error("gcd(a1, a2, a3) = {0}, expected 1")]
    WeightGcd(i64),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("structural failure: {0}")]
    Structural(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

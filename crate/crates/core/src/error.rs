use thiserror::Error;

/// Every failure the toolkit reports. Verification mismatches are not errors;
/// they surface as failed verdicts.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate lattice or sublattice: {0}")]
    Degenerate(String),
    #[error("lattice is not negative definite")]
    NotNegativeDefinite,
    #[error("norm {norm} exceeds enumeration guard {guard} (raise K3LAT_GUARD)")]
    NormGuardExceeded { norm: i64, guard: i64 },
    #[error("glue vector {0} does not pair integrally")]
    NonIntegralGlue(usize),
    #[error("glue vector {0} has odd self-pairing")]
    OddGlue(usize),
    #[error("unknown lattice name: {0}")]
    UnknownLattice(String),
    #[error("discriminant form requires an even lattice")]
    OddLattice,
    #[error("group of order {order} exceeds the element guard {guard}")]
    GroupTooLarge { order: u128, guard: u128 },
    #[error("ill-formed finite quadratic form: {0}")]
    IllFormedForm(String),
    #[error("orthogonal complement is degenerate (isotropic vector)")]
    IsotropicComplement,
    #[error("vector is not primitive")]
    NonPrimitive,
    #[error("zero vector")]
    ZeroVector,
    #[error("reduction exceeded its loop guard")]
    LoopGuard,
    #[error("reflection is not integral")]
    NonIntegralReflection,
    #[error("illegal case: {0}")]
    IllegalCase(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, PizzaError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PizzaError {
    #[error("offset a = {0} is outside the admissible range")]
    InvalidOffset(f64),

    #[error("n must be at least 1, got {0}")]
    InvalidSliceCount(u32),

    #[error("n = {0} is even; the Fourier series only covers odd n")]
    EvenN(u32),

    #[error("n = 1 is excluded from the Fourier series")]
    NEqualsOne,

    #[error("slice index {k} outside 1..={max}")]
    InvalidSliceIndex { k: u32, max: u32 },

    #[error("frequency m = 0 has no Fourier coefficient of this form")]
    ZeroFrequency,

    #[error("invalid coefficient index (m = {m}, j = {j}): m must be odd and >= 3, j >= 1")]
    InvalidCoefficientKey { m: u64, j: u64 },

    #[error("m = {m} is not an odd multiple of n = {n}")]
    NotOddMultiple { m: u64, n: u32 },

    #[error("angle {0} is not finite")]
    InvalidAngle(f64),

    #[error("tolerance {0} must be positive and finite")]
    InvalidTolerance(f64),

    #[error("invalid integration interval [{lower}, {upper}]")]
    InvalidInterval { lower: f64, upper: f64 },

    #[error("quadrature did not reach tolerance {abs_tol:e} within {evaluations} evaluations (estimate {error_estimate:e})")]
    NonConvergence {
        abs_tol: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("a = {0} is too close to 1 for series summation")]
    NearSingular(f64),

    #[error("series budget exhausted: {0}")]
    BudgetExhausted(String),
}

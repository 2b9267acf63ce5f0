use alloc::string::String;
use core::fmt;

/// Errors produced by contract checks and certification routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must agree in dimension do not.
    DimensionMismatch { expected: usize, got: usize, what: &'static str },
    /// An argument violates a documented precondition.
    InvalidArgument(String),
    /// Exhaustive support enumeration would exceed the configured budget.
    ///
    /// Callers should fall back to `sampled_rip_bounds`.
    EnumerationBudget { supports: u128, budget: u64 },
    /// The convergence condition `beta < 2 * alpha` does not hold, so the
    /// iteration bound is undefined (its log base would be <= 1).
    ConditionViolated { alpha: f64, beta: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got, what } => {
                write!(f, "dimension mismatch: {what} expected {expected}, got {got}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::EnumerationBudget { supports, budget } => write!(
                f,
                "exact enumeration needs {supports} supports, over the budget of {budget}; \
                 use sampled bounds instead"
            ),
            Error::ConditionViolated { alpha, beta } => write!(
                f,
                "convergence condition violated: beta ({beta}) >= 2 * alpha ({alpha})"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

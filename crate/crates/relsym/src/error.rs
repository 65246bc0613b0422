use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the dimension engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be a positive integer")]
    ZeroArgument,

    #[error("{r} is not a divisor of {n}")]
    NotADivisor { n: u64, r: u64 },

    #[error("composition total must be non-negative, got {0}")]
    NegativeTotal(String),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("division by zero in Q(zeta_{0})")]
    ZeroDivision(u64),

    #[error("not a constant: coefficient vector {0}")]
    NonConstant(String),

    #[error("not an integer constant: {0}")]
    NonIntegerConstant(String),

    #[error("dihedral group requires n >= 3, got {0}")]
    GroupTooSmall(u64),

    #[error("map is not a permutation of the symbols")]
    NotAPermutation,

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("monomial basis size {size} exceeds cap {cap}")]
    BasisCapExceeded { size: u64, cap: u64 },

    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by ring, polynomial and search operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),

    #[error("variable mismatch: {0}")]
    VarMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("zero input to {0}")]
    ZeroInput(&'static str),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("coefficient not in ring {ring}: {what}")]
    NotInRing { ring: String, what: String },

    #[error("Kronecker bound D={d} must exceed every partial degree (found {degree})")]
    KroneckerBound { d: u64, degree: u32 },

    #[error("degree {degree} too large to unfold with D={d}, n={n}")]
    UnfoldDegree { degree: u64, d: u64, n: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("moduli {i} and {j} are not comaximal (gcd {gcd})")]
    NotCoprime { i: usize, j: usize, gcd: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree {0} is outside 1..=4")]
    DegreeOutOfRange(u32),
    #[error("field order {p}^{n} exceeds 2^20")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("no monic irreducible polynomial of degree {n} over GF({p}) found")]
    NoIrreducibleFound { p: u32, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation {op} expects {expected} operand(s), got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("element index {index} is not in GF({q})")]
    FieldMismatch { index: u32, q: u32 },
    #[error("oracle work {work} exceeds the size cap {cap}")]
    SizeCap { work: u128, cap: u128 },
    #[error("subset of size {size} exceeds the shattering cap {cap}")]
    SubsetTooLarge { size: usize, cap: usize },
    #[error("{what}: needs {needed} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("vertical line present where only y = ax + b lines are allowed")]
    VerticalLinePresent,
    #[error("internal invariant failed: {0}")]
    InvariantFailure(String),
    #[error("norm-based operations need odd characteristic")]
    EvenCharacteristic,
    #[error("the two points are equal")]
    EqualPoints,
    #[error("E is contained in a plane through the origin")]
    ECoplanar,
    #[error("need at least 2 distinct collinear marked points, got {0}")]
    KTooSmall(usize),
    #[error("{0}")]
    InvalidInput(String),
    #[error("unrealizable configuration: {0}")]
    Unrealizable(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

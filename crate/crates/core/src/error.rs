use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {p}^{m} exceeds the supported maximum of 2^20")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {modulus:?} is reducible over F_{p}")]
    ReducibleModulus { modulus: Vec<u32>, p: u32 },
    #[error("element {value} is out of range for a structure of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("ring modulus must be at least 1")]
    InvalidRingModulus,
    #[error("coefficient list must be nonempty")]
    EmptyCoefficients,
    #[error("{engine} budget exceeded: needs {needed}, budget is {budget}")]
    BudgetExceeded {
        engine: &'static str,
        needed: String,
        budget: String,
    },
    /// A division that must be exact left a remainder. Always an implementation bug.
    #[error("inexact division {numerator} / {denominator} in {context}")]
    InexactDivision {
        numerator: String,
        denominator: String,
        context: &'static str,
    },
    #[error("method {method} does not apply: {reason}")]
    NotApplicable { method: String, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("grading mismatch: modulus {left} vs {right}")]
    GradingMismatch { left: u64, right: u64 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a complex: d^2 is nonzero on generator {witness}")]
    NotAComplex { witness: String },
    #[error("lookup error: {0}")]
    Lookup(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("missing table {0}")]
    MissingTable(String),
    #[error("missing face {face} of table {label}")]
    MissingFace { label: String, face: String },
    #[error("genericity failure: {0}; perturb the amplitudes")]
    Genericity(String),
    #[error("hypothesis failed: {what} (witness {witness})")]
    Hypothesis { what: String, witness: String },
    #[error("element is not closed (witness {0})")]
    NotClosed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

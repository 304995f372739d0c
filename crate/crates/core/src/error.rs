use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("Pfaffian needs an even number of rows, got {0}")]
    OddSubset(usize),
    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("colon by the zero ideal")]
    ZeroIdeal,
    #[error("entry ({row}, {col}) has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: i64,
        found: Option<i64>,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no lift: column {column} is not in the image")]
    NoLift { column: usize },
    #[error("not a nonzerodivisor modulo the ideal: {0}")]
    NotNzd(String),
    #[error("precondition failed: {0}")]
    PrecondFailed(String),
    #[error("no admissible f after {trials} trials; rejected: {rejected:?}")]
    SearchExhausted { trials: usize, rejected: Vec<String> },
    #[error("grade dropped: expected {expected}, found {found}")]
    GradeDrop { expected: usize, found: usize },
    #[error("not a complex: d_{index} * d_{next} != 0", next = .index + 1)]
    ComplexCheckFailed { index: usize },
    #[error("assembled ideal differs from the linkage ideal: {0}")]
    IdealMismatch(String),
    #[error("complex is not minimal (unit entry in d_{0})")]
    NotMinimal(usize),
    #[error("resolution exceeded the Hilbert syzygy bound ({0} steps)")]
    ResolutionTooLong(usize),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{name}` at {line}:{column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

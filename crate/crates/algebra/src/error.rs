use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,
    #[error("invalid field descriptor `{0}` (expected `q` or `fp:P` with P prime)")]
    InvalidField(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("too many variables: {0} (at most {1} supported)")]
    TooManyVariables(usize, usize),
    #[error("exponent {0} exceeds the supported maximum of 255")]
    ExponentOverflow(u32),
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ring map does not cover source variable `{0}`")]
    MapIncomplete(String),
    #[error("ring map is not graded: {0}")]
    NotGraded(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("Hilbert data requires a standard-graded ring (all weights 1)")]
    WeightedRing,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("Gröbner basis computation aborted after {pairs} S-pairs (basis size {basis}, degree {degree})")]
    BudgetExhausted { pairs: usize, basis: usize, degree: u32 },
    #[error("ideal is not zero-dimensional in the chosen chart")]
    NotZeroDimensional,
    #[error("separating form failed: {0}")]
    NotSeparating(String),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

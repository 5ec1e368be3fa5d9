use podforge_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PodError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("degenerate seed: {0}")]
    DegenerateSeed(String),
    #[error("gave up after {attempts} attempts; last failure: {last}")]
    RetriesExhausted { attempts: usize, last: String },
    #[error("anchor at infinity")]
    AnchorAtInfinity,
    #[error("not a leg point: {0}")]
    NotALegPoint(String),
    #[error("complex leg pair")]
    ComplexLegPair,
    #[error("special pentapod: the legs span only a P^{0}")]
    SpecialPentapod(usize),
    #[error("infinitely many legs: the span meets the leg variety in a positive-dimensional set")]
    InfinitelyManyLegs,
    #[error("degenerate bilinear form: {0}")]
    DegenerateForm(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl PodError {
    /// Failures caused by unlucky or degenerate input rather than bugs.
    pub fn is_degenerate_input(&self) -> bool {
        matches!(
            self,
            PodError::DegenerateSeed(_)
                | PodError::RetriesExhausted { .. }
                | PodError::SpecialPentapod(_)
                | PodError::InfinitelyManyLegs
                | PodError::AnchorAtInfinity
                | PodError::ComplexLegPair
        )
    }
}

pub type Result<T> = std::result::Result<T, PodError>;

use thiserror::Error;

/// Errors surfaced by constructors and invariant computations.
///
/// `CrossCheckFailed` and `NonIntegerCoefficients` signal that two internal
/// routes to the same value disagreed; they indicate a bug rather than bad
/// input and are reported separately by the command-line tool.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a matroid needs at least one basis")]
    EmptyBasisFamily,

    #[error("bases must share one cardinality, found sizes {0:?}")]
    UnequalBasisCardinalities(Vec<usize>),

    #[error("element {element} is outside the ground set 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("ground set size {n} exceeds the supported maximum {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error(
        "basis exchange fails: no replacement in {basis2} for {element} removed from {basis1}"
    )]
    ExchangeAxiomViolation {
        basis1: String,
        basis2: String,
        element: usize,
    },

    #[error("invalid circuit family: {0}")]
    InvalidCircuitFamily(String),

    #[error("operation requires a loopless matroid, element {0} is a loop")]
    LoopPresent(usize),

    #[error("operation requires a simple matroid: {0}")]
    NotSimple(String),

    #[error("delete and contract sets overlap on element {0}")]
    MinorSetsOverlap(usize),

    #[error("{what} exceeds the {limit} guard (got {actual})")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("not a paving presentation: {0}")]
    NotPaving(String),

    #[error("invalid rank sequence: {0}")]
    InvalidRankSequence(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("image of element {0} is missing")]
    MissingImage(usize),

    #[error("image of element {0} is not homogeneous of degree 1")]
    ImageNotDegreeOne(usize),

    #[error("invalid matroid document: {0}")]
    Document(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error("expected integer coefficients in {0}, found a proper fraction")]
    NonIntegerCoefficients(&'static str),
}

impl Error {
    /// True for errors that mean two independent computations of the same
    /// quantity disagreed (a defect, not an input problem).
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CrossCheckFailed(_) | Error::NonIntegerCoefficients(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors surfaced by the library. Variants split along the CLI exit-code
/// convention: `Input` style problems map to exit 1, `Math` style to exit 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("lattice tag mismatch: expected {expected}, found {found}")]
    TagMismatch { expected: String, found: String },
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("empty input: {0}")]
    Empty(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a nef partition: {0}")]
    NotNef(String),
    #[error("fan check failed: {0}")]
    FanCheck(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing sector diamond for {0}")]
    MissingSector(String),
    #[error("truncation bound required")]
    UnboundedRequest,
    #[error("memory budget exceeded: {0}")]
    MemoryBudget(String),
    #[error("oracle did not stabilise: {0}")]
    NoStabilization(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("derivation failed: {0}")]
    Derivation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures that reflect malformed or mismatched input rather than
    /// a mathematical predicate coming out false.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::RankMismatch(..)
                | Error::TagMismatch { .. }
                | Error::Empty(_)
                | Error::Invalid(_)
                | Error::Parse(_)
                | Error::UnboundedRequest
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

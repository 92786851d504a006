use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {word:?}")]
    InvalidPermutation { word: Vec<usize>, len: usize },

    #[error("not a signed permutation of 1..{len}: {word:?}")]
    InvalidSignedPermutation { word: Vec<i64>, len: usize },

    #[error("rank mismatch: expected {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("{0} is not an involution")]
    NotInvolution(String),

    #[error("fixed-point-free involutions need an even ambient size, got {0}")]
    OddAmbient(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("polynomials live in different rings: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("division by {divisor} left a nonzero remainder")]
    InexactDivision { divisor: String },

    #[error("{0} is not a fixed point of the selected closed orbit")]
    NotInClosedOrbit(String),

    #[error("invalid orbit parameter for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },

    #[error("cannot decide the component of s_{root} . {source_param}: {detail}")]
    AmbiguousSplitEdge {
        source_param: String,
        root: usize,
        detail: String,
    },

    #[error("path independence violated at {node}: via {first} and {second} the classes differ")]
    PathIndependence {
        node: String,
        first: String,
        second: String,
    },

    #[error("class of {0} has a non-integral coefficient")]
    NonIntegral(String),

    #[error("y variables occur outside the monomial y1...yn: {0}")]
    YDiscipline(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    /// Whether the error signals a failed mathematical consistency check
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision { .. }
                | Error::AmbiguousSplitEdge { .. }
                | Error::PathIndependence { .. }
                | Error::NonIntegral(_)
                | Error::YDiscipline(_)
                | Error::Internal(_)
        )
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

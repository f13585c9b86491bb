use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is white and cannot be pressed")]
    PressOnWhite { vertex: usize },

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid pressing path: vertex at position {0} is not black when reached")]
    InvalidPathAt(usize),

    #[error("graph has a non-trivial all-white component and cannot be solved")]
    Unsolvable,

    #[error("graph is already the all-white empty graph")]
    AlreadySolved,

    #[error("more than {cap} successful pressing paths (found {found} before stopping)")]
    CapExceeded { cap: usize, found: usize },

    #[error("successful pressing paths of different lengths: {first} and {other}")]
    UnequalLengths { first: usize, other: usize },

    #[error("path set is empty")]
    EmptyPathSet,

    #[error("pressing path has length {0}, at least 2 required")]
    PathTooShort(usize),

    #[error("desire edge {0} is unoriented; no reversal acts on it")]
    EdgeNotOriented(usize),

    #[error("overlap graph has a non-trivial unoriented component; hurdles may be present")]
    HurdleRiskPresent,

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("parse error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, msg: String },

    #[error("self-loop on vertex {vertex} at line {line}")]
    SelfLoop { vertex: usize, line: usize },

    #[error("duplicate edge {u} {v} at line {line}")]
    AsymmetricEdge { u: usize, v: usize, line: usize },

    #[error("graph has {0} vertices, at most {max} supported", max = crate::bwgraph::MAX_VERTICES)]
    TooManyVertices(usize),
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

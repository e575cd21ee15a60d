use thiserror::Error;

/// Errors raised by graph construction, the chain engine and the closed-form families.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PzfError {
    #[error("vertex {vertex} is out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{family} requires a size of at least {min}, got {got}")]
    FamilyTooSmall {
        family: &'static str,
        min: usize,
        got: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph of order {n} exceeds the bitset limit of {max} vertices")]
    TooManyVertices { n: usize, max: usize },

    #[error("reachable state count exceeds the cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("blue set is empty")]
    EmptyBlueSet,

    #[error("blue set already contains every vertex")]
    FullBlueSet,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("transition matrix is not properly ordered: entry ({row}, {col}) lies below the diagonal")]
    NotTriangular { row: usize, col: usize },

    #[error("state {0} is absorbing but is not the final state")]
    SpuriousAbsorbingState(usize),

    #[error("invalid graph6 data: {0}")]
    Graph6(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = PzfError> = std::result::Result<T, E>;

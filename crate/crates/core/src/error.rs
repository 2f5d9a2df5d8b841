use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid identification of {0} and {1}")]
    InvalidIdentification(usize, usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} has size {size}, above the cap of {cap} (raise the cap to override)")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("graph has no blocks (edgeless)")]
    NoBlocks,

    #[error("not a partition of the vertex set")]
    NotAPartition,

    #[error(
        "lower-bound regime: no member of the stripped family is P3-subgraph-free, \
         so the Turing kernelization does not apply"
    )]
    LowerBoundRegime,

    #[error("family must be nonempty")]
    EmptyFamily,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("labels must be strictly ascending ({0} is followed by {1})")]
    UnsortedLabels(u32, u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge ({0}, {1}) has an endpoint outside the declared sides")]
    EdgeOutOfRange(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {size} vertices, the exhaustive search is limited to {limit}")]
    TooLarge { size: usize, limit: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("invalid crown decomposition: {0}")]
    InvalidCrown(#[from] crate::kernel::CrownViolation),
    #[error("crown search precondition violated: {0}")]
    Precondition(&'static str),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parse failures for the instance file format, tagged with a 1-based line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `p ecoc` header")]
    MissingHeader,
    #[error("second header line")]
    DuplicateHeader,
    #[error("malformed header, expected `p ecoc <n> <m> <l> <k>`")]
    MalformedHeader,
    #[error("l must be at least 1")]
    ZeroL,
    #[error("edge line before the header")]
    EdgeBeforeHeader,
    #[error("malformed edge line, expected `e <u> <v>`")]
    MalformedEdge,
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(u64, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u64, u64),
    #[error("header declares {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("unrecognized line")]
    UnknownLine,
}

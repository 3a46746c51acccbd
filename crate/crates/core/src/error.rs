use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("root closure exceeded cap {cap}: graph is not of finite type or the cap is too small")]
    NonFiniteType { cap: usize },

    #[error("composition error: {0}")]
    Composition(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("entry ({row}, {col}) of d_{degree} is not invertible")]
    NotInvertible { degree: i32, row: usize, col: usize },

    #[error("complex is not minimal")]
    NotMinimal,

    #[error("cannot normalise the zero complex")]
    ZeroComplex,

    #[error("degenerate central charge: {0}")]
    DegenerateCharge(String),

    #[error("object is not a member of the heart (up to shift): {0}")]
    NotInHeart(String),

    #[error("genericity violated: {0}")]
    Genericity(String),

    #[error("central charge lies on the wall of root {0:?}")]
    OnWall(Vec<i64>),

    #[error("path needs refinement: {0}")]
    Refinement(String),

    #[error("path is not a loop: {0}")]
    NotALoop(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Usage-class errors (malformed input, missing files) as opposed to domain failures.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

use thiserror::Error;

/// Errors raised while building or analysing a bound quiver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error(
        "ideal is not admissible within path-length cap {cap}: no length L <= {cap} with every path of length L in I \
         (raise --path-cap / BQTOP_PATH_CAP if the ideal is admissible)"
    )]
    Admissibility { cap: usize },
    #[error("relation support of size {size} exceeds the oracle cap {cap}")]
    SupportTooLarge { size: usize, cap: usize },
    #[error("quiver is not connected")]
    NotConnected,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("van Kampen hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("quiver has oriented cycles; this computation requires a triangular algebra")]
    TriangularRequired,
    #[error("no semi-normed basis: {0}")]
    NoSemiNormedBasis(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("morphism is not a covering: {0}")]
    NotACovering(String),
    #[error("group action is not Galois: {0}")]
    NotGalois(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

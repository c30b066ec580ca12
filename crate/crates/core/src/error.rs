use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("cone {0:?} is not a face of the fan")]
    UnknownCone(Vec<usize>),

    #[error("exact mode unavailable in dimension {dim} (exact arrangement enumeration needs d <= 3); use grid mode")]
    ExactModeUnavailable { dim: usize },

    #[error("unsupported dimension {dim}: {what}")]
    UnsupportedDimension { dim: usize, what: &'static str },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid CW poset: {}", .0.join("; "))]
    InvalidCw(Vec<String>),

    #[error("cells {lower} and {upper} are not strictly comparable")]
    Incomparable { lower: String, upper: String },

    #[error("unknown cell id {0}")]
    UnknownCell(String),

    #[error("graded dimensions still nonzero at degree cap {cap}")]
    NonVanishingAtCap { cap: usize },

    #[error("invalid rational {0:?}: expected \"p/q\" or an integer")]
    InvalidRational(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

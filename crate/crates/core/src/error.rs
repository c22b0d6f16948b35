use thiserror::Error;

pub type Result<T> = std::result::Result<T, MoranError>;

#[derive(Debug, Error)]
pub enum MoranError {
    #[error("at least 2 values are required, got {0}")]
    TooFewValues(usize),

    #[error("values have zero variance")]
    ZeroVariance,

    #[error("negative weight {weight} at row {row}")]
    NegativeWeight { row: usize, weight: f64 },

    #[error("self-loop at region {0}")]
    SelfLoop(usize),

    #[error("neighbor structure is not symmetric: {from} lists {to} but not the reverse")]
    Asymmetric { from: usize, to: usize },

    #[error("neighbor index {index} out of range for {n} regions")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("operation requires row-normalized weights")]
    NotNormalized,

    #[error("region {0} has no neighbors")]
    IsolatedRegion(String),

    #[error("permutation distribution is empty")]
    EmptyDistribution,

    #[error("{count} permutations are too few for alpha {alpha} (need at least {required})")]
    TooFewPermutations {
        count: usize,
        alpha: f64,
        required: usize,
    },

    #[error("alpha must lie in (0, 0.5), got {0}")]
    BadAlpha(f64),

    #[error("permutation count must be at least 1")]
    ZeroPermutations,

    #[error("bandwidth must be positive and finite, got {0}")]
    BadBandwidth(f64),

    #[error("grid size must be at least 16, got {0}")]
    BadGridSize(usize),

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("region ids do not match weights: {0}")]
    IdMismatch(String),

    #[error("duplicate region id {0}")]
    DuplicateId(String),

    #[error("unknown region id {0}")]
    UnknownId(String),

    #[error("feature {0} has no id property")]
    MissingId(usize),

    #[error("unsupported geometry type {kind} in feature {feature}")]
    UnsupportedGeometry { feature: usize, kind: String },

    #[error("malformed geometry document: {0}")]
    MalformedDocument(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("coincident points")]
    CoincidentPoints,

    #[error("bundle: {0}")]
    Bundle(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

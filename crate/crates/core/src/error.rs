use thiserror::Error;

/// Errors produced by shape construction, measurement and image handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),

    #[error("component {index} has zero area")]
    DegenerateComponent { index: usize },

    #[error("components {first} and {second} overlap")]
    OverlappingComponents { first: usize, second: usize },

    #[error("no components")]
    NoComponents,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("singular affine map (det = {det:e})")]
    SingularMap { det: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate histogram: {populated} populated bins, {classes} classes requested")]
    DegenerateHistogram { populated: usize, classes: usize },

    #[error("malformed image: {0}")]
    MalformedImage(String),

    #[error("unsupported bit depth: {0}")]
    UnsupportedDepth(String),

    #[error("label {0} does not fit in an 8-bit image")]
    LabelOutOfRange(u32),

    #[error("malformed polygon file: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the glyph feature pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("raster dimensions must be at least 1x1 (got {width}x{height})")]
    InvalidDimensions { width: usize, height: usize },

    #[error("pixel buffer has {actual} entries, expected {expected}")]
    BufferSize { expected: usize, actual: usize },

    #[error("pixel (row {row}, col {col}) is outside a {width}x{height} raster")]
    OutOfBounds {
        row: usize,
        col: usize,
        width: usize,
        height: usize,
    },

    #[error("constant image: every pixel has intensity {0}, no threshold separates two classes")]
    ConstantImage(u8),

    #[error("empty image: no foreground pixel")]
    EmptyImage,

    #[error("empty support: centroid of an empty pixel set is undefined")]
    EmptySupport,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("netpbm parse error: {0}")]
    Parse(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("training store is empty")]
    EmptyStore,
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

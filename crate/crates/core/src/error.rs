use thiserror::Error;

/// Errors raised by body construction, measure evaluation and the checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("polygon is not origin-symmetric (max mismatch {0:.3e})")]
    NotSymmetric(f64),

    #[error("polygon is not convex at vertex {0}")]
    NotConvex(usize),

    #[error("origin is not an interior point of the body")]
    OriginNotInterior,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("parameter `{name}` out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    #[error("invalid grid function: {0}")]
    InvalidGridFunction(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
        })
    }
}

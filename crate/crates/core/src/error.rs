use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parts must be weakly decreasing and positive, got {0:?}")]
    InvalidParts(Vec<usize>),

    #[error("cannot parse partition {input:?}: {reason}")]
    ParseParts { input: String, reason: String },

    #[error("u = {0} is not a concave corner of the diagram")]
    NotConcaveCorner(i64),

    #[error("insertion value {0} lies outside [0, 1]")]
    ValueOutOfRange(f64),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("probability level {0} outside the admissible range")]
    InvalidLevel(f64),

    #[error("transformed level Z = {0} falls outside [0, 1]")]
    LevelOutOfRange(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shape with {0} boxes is too large for the rejection sampler (max 8)")]
    ShapeTooLarge(usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid experiment configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

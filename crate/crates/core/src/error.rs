use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation is undefined for the origin")]
    OriginInput,

    #[error("points lie on the same radial line")]
    SameRadialLine,

    #[error("dot-product target {index} is zero; pass allow_zero to permit it")]
    ZeroAlpha { index: usize },

    #[error("points must be distinct")]
    CoincidentPoints,

    #[error("duplicate point: index {first} equals index {second}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("malformed rational {0:?}")]
    MalformedScalar(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag used by the CLI and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::OriginInput => "origin_input",
            Error::SameRadialLine => "same_radial_line",
            Error::ZeroAlpha { .. } => "zero_alpha",
            Error::CoincidentPoints => "coincident_points",
            Error::DuplicatePoint { .. } => "duplicate_point",
            Error::MalformedScalar(_) => "malformed_scalar",
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }

    /// Everything except I/O failures is a caller-side validation problem.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

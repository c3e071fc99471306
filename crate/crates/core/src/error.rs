use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: argument {arg} outside the domain ({reason})")]
    Domain {
        function: &'static str,
        arg: f64,
        reason: &'static str,
    },

    #[error("derivative order {requested} exceeds the supported cap {cap}")]
    OrderCap { requested: usize, cap: usize },

    #[error("invalid singular part: {0}")]
    InvalidSingularPart(String),

    #[error("unsupported term shape: {0}")]
    UnsupportedTerm(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("insufficient xmax: truncation bound {bound:e} exceeds tolerance {tol:e}")]
    InsufficientXmax { bound: f64, tol: f64 },

    #[error("kernel tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailBound { bound: f64, tol: f64 },

    #[error("insufficient xmax for {needed} dyadic windows (xmax = {xmax}, need {required})")]
    InsufficientWindows {
        needed: usize,
        xmax: f64,
        required: f64,
    },

    #[error("range error: {0}")]
    Range(String),

    #[error("divergent Stieltjes transform: {0}")]
    Divergent(String),

    #[error("unbounded oscillation detected: {0}")]
    UnboundedOscillation(String),

    #[error("unbounded function on the tail window: {0}")]
    Unbounded(String),

    #[error("Stieltjes data is not non-decreasing: {0}")]
    NotMonotone(String),

    #[error("missing Wiener-Ikehara data in singular part")]
    MissingWienerIkehara,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Variant name, for structured error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "Domain",
            Error::OrderCap { .. } => "OrderCap",
            Error::InvalidSingularPart(_) => "InvalidSingularPart",
            Error::UnsupportedTerm(_) => "UnsupportedTerm",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::InsufficientXmax { .. } => "InsufficientXmax",
            Error::TailBound { .. } => "TailBound",
            Error::InsufficientWindows { .. } => "InsufficientWindows",
            Error::Range(_) => "Range",
            Error::Divergent(_) => "Divergent",
            Error::UnboundedOscillation(_) => "UnboundedOscillation",
            Error::Unbounded(_) => "Unbounded",
            Error::NotMonotone(_) => "NotMonotone",
            Error::MissingWienerIkehara => "MissingWienerIkehara",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
        }
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// Everything except [`Error::Inconsistency`] is an input or precondition
/// problem; an inconsistency means two independent computations disagreed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("path ends at {end} but the next path starts at {start}")]
    EndpointMismatch { end: usize, start: usize },

    #[error("empty path")]
    EmptyPath,

    #[error("invalid Coxeter matrix entry: {0}")]
    InvalidEntry(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root enumeration exceeded the cap of {cap} roots")]
    RootCap { cap: usize },

    #[error("chordless cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCap { cap: usize },

    #[error("generator enumeration is not saturated: {0}")]
    NotSaturated(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Short machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownGenerator(_) => "unknown_generator",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::NotAdjacent(..) => "not_adjacent",
            Error::EndpointMismatch { .. } => "endpoint_mismatch",
            Error::EmptyPath => "empty_path",
            Error::InvalidEntry(_) => "invalid_entry",
            Error::Parse { .. } => "parse",
            Error::Precondition(_) => "precondition",
            Error::RootCap { .. } => "root_cap",
            Error::CycleCap { .. } => "cycle_cap",
            Error::NotSaturated(_) => "not_saturated",
            Error::Inconsistency(_) => "inconsistency",
        }
    }

    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}

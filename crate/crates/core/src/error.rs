use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure classes shared by every module. The CLI maps each class onto a
/// distinct process exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input document or option (bad JSON, bad rational, unknown kind).
    #[error("parse error: {0}")]
    Parse(String),

    /// Index or coefficient outside the declared domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Signature that does not admit a Young diagram, or mismatched shapes.
    #[error("shape error: {0}")]
    Shape(String),

    /// A mathematical precondition of the requested operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Homotopy input is not closed; carries the nonzero residual in text form.
    #[error("input is not closed: residual {residual}")]
    NotClosed { residual: String },

    /// Input is closed but no potential exists inside the truncation.
    #[error("closed input is not exact within the truncation: residual {residual}")]
    NotExact { residual: String },

    #[error("unsupported coefficient domain: {0}")]
    UnsupportedDomain(String),

    /// A required certificate or intermediate result is missing.
    #[error("missing dependency: {0}")]
    Dependency(String),

    #[error("charge functional vanishes identically on the space")]
    DegenerateCharge,

    /// Basis dimension exceeded the configured cap.
    #[error("resource limit: {what} needs dimension {needed}, cap is {cap}")]
    Resource {
        what: String,
        needed: usize,
        cap: usize,
    },

    /// An identity that must hold exactly did not (never downgraded to a warning).
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Domain(_)
            | Error::Shape(_)
            | Error::Precondition(_)
            | Error::NotClosed { .. }
            | Error::NotExact { .. }
            | Error::UnsupportedDomain(_)
            | Error::Dependency(_)
            | Error::DegenerateCharge => 3,
            Error::Resource { .. } => 4,
            Error::Consistency(_) => 5,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

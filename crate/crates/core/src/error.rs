use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// An input lies outside the domain where the formula is defined.
    /// The payload names the violated precondition.
    Domain(&'static str),
    /// An iterative procedure ran out of refinements or steps.
    NonConvergence(&'static str),
    /// Requested series order exceeds the configured maximum.
    Order { requested: usize, max: usize },
    /// A method was requested that does not exist for the potential.
    Unsupported(&'static str),
    /// A sweep or query specification is malformed.
    InvalidSpec(&'static str),
}

impl Error {
    /// Short machine-readable code, used for empty cells in sweep output.
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NonConvergence(_) => "nonconvergence",
            Error::Order { .. } => "order",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidSpec(_) => "invalid",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NonConvergence(what) => write!(f, "no convergence: {what}"),
            Error::Order { requested, max } => {
                write!(f, "order {requested} exceeds maximum {max}")
            }
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::InvalidSpec(what) => write!(f, "invalid specification: {what}"),
        }
    }
}

impl core::error::Error for Error {}

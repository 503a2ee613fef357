use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the set on which the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A construction parameter is missing or out of range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Text input could not be parsed; `field` names what was being read.
    #[error("cannot parse {field}: {message}")]
    Parse { field: String, message: String },

    /// An enumeration grew past its configured budget.
    #[error("{what} exceeded the budget of {budget} (reached at n = {reached})")]
    Resource {
        what: &'static str,
        budget: usize,
        reached: u64,
    },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

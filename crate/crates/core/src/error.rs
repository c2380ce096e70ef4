use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph, colouring or structure text.
    #[error("parse error at line {line}: {message} (offending token `{token}`)")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },
    /// An operation was called outside its domain.
    #[error("{op}: {message}")]
    Domain { op: &'static str, message: String },
    /// A configured search or enumeration cap was exceeded.
    #[error("{op}: budget exceeded: {message}")]
    Budget { op: &'static str, message: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            op,
            message: message.into(),
        }
    }

    pub(crate) fn budget(op: &'static str, message: impl Into<String>) -> Self {
        Error::Budget {
            op,
            message: message.into(),
        }
    }

    pub(crate) fn parse(line: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            token: token.into(),
            message: message.into(),
        }
    }
}

use thiserror::Error;

/// Errors raised by the library. The CLI maps the variants onto exit codes
/// (parse 2, consistency 3, resource 4).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("undefined value: {0}")]
    Undefined(&'static str),

    #[error("resource cap exceeded: {what} needs {needed}, limit is {limit}")]
    Resource {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("unsupported ambient dimension {dim} (cap {cap})")]
    UnsupportedDimension { dim: usize, cap: usize },

    #[error("exponent overflow")]
    Overflow,

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("monomial {monomial} is not in the {m}-th symbolic power")]
    NotInSymbolicPower { monomial: String, m: u32 },

    #[error("characteristic {p} too small: need p > {needed}")]
    Characteristic { p: u64, needed: u64 },

    #[error("no generic configuration found after {attempts} attempts from seed {seed}")]
    Seed { seed: u64, attempts: u32 },

    #[error("ρ̂ is not certified; refusing to run the window search")]
    Uncertified,

    #[error("consistency violation: {0}")]
    Consistency(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            msg: err.to_string(),
        }
    }

    pub(crate) fn resource(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::Resource {
            what,
            needed,
            limit,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("polynomial is not admissible: c_0 * c_n = 0")]
    NotAdmissible,

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("norm hypothesis violated: ||P||_{p} = {norm} < 1")]
    NormBelowOne { p: f64, norm: f64 },

    #[error("logarithm of non-positive quantity {value} in {context}")]
    Domain { context: &'static str, value: f64 },

    #[error("empty root set")]
    EmptyRoots,

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("moment E|C|^{t} is infinite for {ensemble}")]
    InfiniteMoment { ensemble: String, t: f64 },

    #[error("{op} is not defined for ensemble {ensemble}")]
    Unsupported { op: &'static str, ensemble: String },

    #[error("cannot parse {what} from `{input}`: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("invalid experiment configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }
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

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("generator {symbol} is not part of the {algebra} algebra")]
    IllegalGenerator { algebra: String, symbol: String },

    #[error("unsupported mode-sum shape: {0}")]
    UnsupportedShape(String),

    #[error("kappa0 must be nonzero for the Virasoro realization")]
    ZeroKappa,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

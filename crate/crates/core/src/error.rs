use thiserror::Error;

use crate::topology::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("unknown node id {0}")]
    UnknownNode(NodeId),

    #[error("point is not on the curve")]
    OffCurve,

    #[error("key agreement failed: {0}")]
    KeyAgreement(String),

    #[error("no keypair for node {0}")]
    MissingKeyPair(NodeId),

    #[error("insufficient shares: need {need}, got {got}")]
    InsufficientShares { need: usize, got: usize },

    #[error("invalid share set: {0}")]
    InvalidShares(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

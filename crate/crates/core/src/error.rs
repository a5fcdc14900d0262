// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors surfaced by instance construction, algorithms, audits and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("query recording is disabled on this ledger; audit unavailable")]
    AuditUnavailable,

    #[error("graph on {n} vertices exceeds the dense limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

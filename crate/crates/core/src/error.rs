use thiserror::Error;

use crate::poset::ElementId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements {0} and {1} are not comparable, so they do not form a chain")]
    NotAChain(ElementId, ElementId),

    #[error("rank {rank} is outside [0, {n}]")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("element {0} does not belong to the poset")]
    UnknownElement(ElementId),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("distribution is not admissible: {0}")]
    NotAdmissible(String),

    #[error("table is not convex: forward difference decreases at {0}")]
    NotConvex(i64),

    #[error("mean {0} is not an integer")]
    NonIntegralMean(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Exact `k`-chain counting on graded posets: centred families, the minimum
//! chain-count function `m_k`, chain expectations, rank-level compression and
//! exhaustive/heuristic verification of the extremal bound.

pub mod centred;
pub mod cli;
pub mod compression;
pub mod descriptor;
pub mod error;
pub mod expectation;
pub mod jensen;
pub mod lattices;
pub mod poset;
pub mod report;
pub mod verify;

pub use error::{Error, Result};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input too large: {what} = {got} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("operation requires a nonempty sequence")]
    EmptySequence,

    #[error("invalid character {0:?} (expected '0' or '1')")]
    BadSequenceChar(char),

    #[error("invalid character {0:?} (expected '1', '*' or '0')")]
    BadStateChar(char),

    #[error("pair is not dominated: the first sequence must dominate the second")]
    NotDominated,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("capacity exceeded: |S| + |T| = {occupied} > N = {n}")]
    Capacity { occupied: usize, n: usize },

    #[error("position {pos} lies outside the geometry")]
    OutOfRange { pos: i64 },

    #[error("state has no empty site")]
    NoEmptySite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

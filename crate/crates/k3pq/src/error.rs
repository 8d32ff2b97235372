use thiserror::Error;

use crate::arith::ArithError;
use crate::curves::Inadmissible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("malformed branch datum: {0}")]
    MalformedBranch(String),
    #[error("inadmissible branch datum: {0}")]
    Inadmissible(#[from] Inadmissible),
    #[error("bound violation: {0}")]
    Bound(String),
    #[error("the two curves carry actions of different groups")]
    GroupMismatch,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;

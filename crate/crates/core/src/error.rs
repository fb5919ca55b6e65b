use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("invalid word: {0}")]
    Word(String),
    #[error("invalid permutation: {0}")]
    Perm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inexact division: {0}")]
    Inexact(String),
    #[error("enumeration budget exceeded: need {needed}, limit {limit} (raise FUBINI_BUDGET to override)")]
    Budget { needed: u128, limit: u128 },
    #[error("matrix outside M_{{n,k}}: {0}")]
    Degenerate(String),
    #[error("rewriting did not terminate within {0} steps")]
    NoTermination(usize),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("identity falsified: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;

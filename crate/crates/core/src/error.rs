use thiserror::Error;

use crate::group::GroupSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element for {group}: {reason}")]
    InvalidElement { group: GroupSpec, reason: String },

    #[error("elements belong to different groups ({0} vs {1})")]
    GroupMismatch(GroupSpec, GroupSpec),

    #[error("the subgroup generated by {0:?} is infinite")]
    InfiniteSubgroup(Vec<i64>),

    #[error("operation requires a finite group, got {0}")]
    UnsupportedInfiniteGroup(GroupSpec),

    #[error("resource limit exceeded: {what} is {actual}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        actual: u64,
        limit: u64,
    },

    #[error("|A| = {a} but |B| = {b}")]
    SizeMismatch { a: usize, b: usize },

    #[error("B contains the identity")]
    IdentityInB,

    #[error("set {0} is empty")]
    EmptySet(&'static str),

    #[error("{0} is not a subset of {1}")]
    NotASubset(&'static str, &'static str),

    #[error("defect {d} is outside 0..={max}")]
    InvalidDefect { d: usize, max: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("no deficient pair exists for these parameters")]
    NoConstruction,

    #[error("right partition number is infinite")]
    InfiniteRho,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

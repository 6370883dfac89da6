use alloc::string::String;

use crate::cartan::Family;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: {bound}")]
    InvalidRank {
        family: Family,
        rank: usize,
        bound: &'static str,
    },
    #[error("cannot parse Cartan type {0:?}")]
    BadCartanType(String),
    #[error("enumeration too large: |W({group})| = {order} exceeds the cap of {cap} elements")]
    EnumerationTooLarge { group: String, order: u64, cap: usize },
    #[error("index {index} out of range (expected < {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("pairing against the zero vector")]
    ZeroRoot,
    #[error("{0}")]
    InvalidLevi(String),
    #[error("not a relative root of this Levi: {0}")]
    NotRelativeRoot(String),
    #[error("{0}")]
    InvalidWallSet(String),
    #[error("omega is not dominant: <omega, {root}^vee> = {value} < 0; conjugate it into the closed dominant chamber first")]
    NotDominant { root: String, value: String },
    #[error("omega has {got} coordinates, expected {expected}")]
    OmegaDimension { got: usize, expected: usize },
    #[error("invalid pole data: {0}")]
    InvalidPoles(String),
    #[error("the decomposition requires a regular inducing datum (assume_regular must be set)")]
    RegularityNotAsserted,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use num_bigint::BigUint;
use thiserror::Error;

use crate::format::ParseError;
use crate::trapezoid::{Kind, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters n={n}, ell={ell}: need n >= 3 and ell >= 0")]
    InvalidParams { n: usize, ell: i64 },

    #[error("cell ({row},{j}) is outside a {kind} trapezoid with n={n}")]
    CellOutOfRange { kind: Kind, row: usize, j: usize, n: usize },

    #[error("not a valid {kind} trapezoid: {report}")]
    Invalid { kind: Kind, report: ValidationReport },

    #[error("rank {rank} is out of range for a family of {count} trapezoids")]
    RankOutOfRange { rank: BigUint, count: BigUint },

    #[error("expected a {expected} trapezoid, got a {found} trapezoid")]
    KindMismatch { expected: Kind, found: Kind },

    #[error("partition {index}/{parts} is not a valid shard (need index < parts)")]
    InvalidPartition { index: usize, parts: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

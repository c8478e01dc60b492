use thiserror::Error;

use crate::topology::Vertex;

/// Errors produced by the cycle prefix library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameter domain violated: {0}")]
    ParameterDomain(String),

    #[error("rotation index {k} outside 2..={len}")]
    IndexOutOfRange { k: usize, len: usize },

    #[error("symbol {symbol} already occurs in {vertex}")]
    SymbolPresent { symbol: u8, vertex: Vertex },

    #[error("symbol {symbol} outside the alphabet 1..={max}")]
    SymbolOutOfAlphabet { symbol: u8, max: u8 },

    #[error("malformed vertex: {0}")]
    InvalidVertex(String),

    #[error("relabeling is not a bijection on 1..={0}")]
    NonBijective(usize),

    #[error("source and destination are the same vertex {0}")]
    SameVertex(Vertex),

    #[error("alpha undefined for {vertex} at distance {k}")]
    UndefinedAlpha { vertex: Vertex, k: usize },

    #[error("symbol {symbol} is outside the domain of theta for {vertex}: {reason}")]
    ThetaDomain {
        vertex: Vertex,
        symbol: u8,
        reason: &'static str,
    },

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("instance has {count} vertices, above the cap of {cap}")]
    InstanceTooLarge { count: u64, cap: u64 },

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("eccentricity differs between sources: {0}")]
    SymmetryViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

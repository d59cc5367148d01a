use crate::algebra::MAX_N;

/// Errors produced by the library. Everything here is a caller-input or
/// invariant problem; no operation in this crate does floating point or
/// lossy arithmetic, so there are no rounding/precision variants.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension exponent {0} out of range (2..={MAX_N})")]
    DimensionRange(u32),

    #[error("basis index {index} out of range for the 2^{n}-ions")]
    IndexRange { index: u32, n: u32 },

    #[error("{0:?} is not an associative triple (indices must be distinct, nonzero, XOR to 0)")]
    NotATrip([u32; 3]),

    #[error("strut constant {s} invalid for the 2^{n}-ions (need 0 < S < {g})", g = 1u32 << (n - 1))]
    StrutRange { s: u32, n: u32 },

    #[error("{u} is not a valid assessor L-index for strut constant {s} (need 0 < u < G, u != S)")]
    InvalidLIndex { u: u32, s: u32 },

    #[error("recipe needs a strut constant > 8 that is not a power of two, got {0}")]
    RecipeDomain(u32),

    #[error("augmentation bit {bit} collides with strut bits of {s} or is not a fresh high bit")]
    BitCollision { bit: u32, s: u32 },

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

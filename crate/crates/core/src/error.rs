use thiserror::Error;

/// Errors surfaced by this crate. All arithmetic is exact, so there are no
/// tolerance or convergence failures; everything here is a precondition
/// violation, a size guard, or a genericity failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// A requested object would exceed the configured size cap.
    #[error("size cap exceeded: dimension C({n},{m}) = {dim} > {cap}")]
    SizeCapExceeded { n: u32, m: u32, dim: String, cap: usize },

    /// Vector or matrix shapes do not line up.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Two subsets (or a subset and a permutation) live in different ambient sets.
    #[error("ambient set mismatch: {left} vs {right}")]
    AmbientMismatch { left: u32, right: u32 },

    /// A randomly drawn parameter vector produced coinciding eigenvalues, so
    /// rank-based multiplicities are meaningless for it.
    #[error("parameters are not generic: eigenvalues for k = {k1} and k = {k2} coincide")]
    NonGeneric { k1: u32, k2: u32 },

    /// An integer division that must be exact left a remainder.
    #[error("inexact division: {0}")]
    InexactDivision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Exact spectral combinatorics of subset representations of S_n.
//!
//! The crate builds the universal intertwining matrix of the representation
//! of S_n on m-subsets of ⟦1,n⟧, evaluates its eigenvalues, multiplicities,
//! and eigenvectors in closed form, and cross-checks every closed form
//! against a brute-force exact linear-algebra oracle. All arithmetic is
//! integer or rational with arbitrary precision; there are no tolerances.

pub mod combinatorics;
pub mod error;
pub mod intertwiner;
pub mod elk;
pub mod spectrum;
pub mod symmetrizer;
pub mod verify;

pub use error::{Error, Result};

/// Scalars: arbitrary-precision integers and rationals.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

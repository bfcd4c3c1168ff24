//! Exact combinatorial models of character-sheaf block data on reductive
//! groups: root data and Weyl groups, facet geometry of the finite and affine
//! root hyperplane arrangements, extended affine Weyl orbits and stabilizers,
//! cuspidal data, block enumeration with smash-product Hilbert series, graded
//! induction/restriction, and machine checks for the supporting combinatorial
//! lemmas.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! there is no floating point anywhere in this crate.

pub mod affweyl;
pub mod apartment;
pub mod basepoints;
pub mod blocks;
pub mod chars;
pub mod cli;
pub mod cuspidal;
pub mod facetcat;
pub mod indres;
pub mod num;
pub mod rootdata;
pub mod series;

pub use rootdata::RootDatum;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid root datum: {0}")]
    Invalid(String),
    #[error("classification data absent for {0}")]
    DataAbsent(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Brute-force oracle for open compact subgroups of SL₂ over an unramified
//! extension of ℤₚ: finite images in SL₂(𝔒/𝔐ᵐ), their orders, Frattini
//! quotients, transfers, local indices and exact double-coset counts.

pub mod closure;
pub mod exact;
pub mod frattini;
pub mod index;
pub mod mat;
pub mod pattern;
pub mod ring;
pub mod transfer;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("closure check failed: {0}")]
    NotClosed(String),
    #[error("predicted order {predicted} exceeds the cap {cap}")]
    CapExceeded { predicted: u128, cap: u128 },
}

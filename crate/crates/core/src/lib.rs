//! Exact mod-p Hecke algebras and graded Ext-algebras of SL₂(ℚₚ).
//!
//! * [`weyl`]: the infinite dihedral group W and its torus extension W̃.
//! * [`hecke`]: the pro-p Iwahori, Iwahori and spherical Hecke algebras
//!   over 𝔽ₚ with the change-of-level maps between them.
//! * [`ext_iwahori`]: the Ext-algebra E_J* on the bases τ, x, α, φ, its
//!   center and finite generation.
//! * [`ext_spherical`]: the spherical Ext-algebra E_K* as a quotient of the
//!   center of E_J*.

pub mod exec;
pub mod ext_iwahori;
pub mod ext_spherical;
pub mod field;
pub mod hecke;
pub mod weyl;

pub use field::Fp;
pub use weyl::{ExtendedWeylElt, Gen, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: &'static str, found: &'static str },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("unsupported component: {0}")]
    Unsupported(String),
}

//! Exact computation of Baum-Bott residues for singular holomorphic
//! foliations on projective space.
//!
//! The pipeline restricts a codimension-one foliation to a disc cutting a
//! singular component transversally, takes the dual vector field of the
//! restricted form and evaluates the Grothendieck residue of `φ(JX)` at the
//! isolated zero on the disc. Residues are then checked globally against
//! `φ(N_F)` in the cohomology ring of `P^n`.
//!
//! Modules, bottom-up:
//!
//! - [`poly`]: exact multivariate polynomials over `Q`, parsing, Gröbner
//!   bases, resultants and rational roots.
//! - [`foliation`]: projective and affine 1-forms, charts, disc restriction
//!   and dual vector fields.
//! - [`singular`]: singular ideals, verification of declared components,
//!   isolated zeros of plane vector fields and genericity of discs.
//! - [`residue`]: Chern monomials of matrices and Grothendieck residues.
//! - [`martinelli`]: numerical boundary-integral oracle for residues.
//! - [`chern`]: `Q[h]/(h^{n+1})` and the global residue check.
//! - [`cenkl`]: symmetric-function decomposition and the projective-bundle
//!   ring used for singular sets of non-expected dimension.

pub mod cenkl;
pub mod chern;
mod error;
pub mod foliation;
pub mod martinelli;
pub mod poly;
pub mod residue;
pub mod singular;

pub use error::{Error, Result};
pub use poly::{MultiPoly, Rational, Vars};

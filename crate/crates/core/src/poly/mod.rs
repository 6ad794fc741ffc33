//! Exact polynomial arithmetic over `Q`.
//!
//! Everything downstream (form coefficients, vector fields, Jacobians,
//! ideals) is carried by [`MultiPoly`]. Coefficients are always exact
//! [`Rational`]s; there is no modular or floating-point shortcut anywhere in
//! this module except for [`complex_roots`], which is only used to locate
//! irrational zeros before they are certified.

mod groebner;
mod matrix;
mod multipoly;
mod order;
mod parse;
mod univariate;

pub use groebner::{
    groebner, normal_form, quotient_dimension, Division, GroebnerBasis, GroebnerOptions, Ideal,
    QuotientDim, DEFAULT_STEP_BUDGET,
};
pub use matrix::{jacobian, rat_det, rat_rank, PolyMatrix, RatMatrix};
pub use multipoly::{vars, vars_from, MultiPoly, Vars};
pub use order::TermOrder;
pub use parse::parse_poly;
pub use univariate::{
    complex_roots, rational_roots, rationalize, resultant, RationalRoots, UniPoly,
};

pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer numerator and denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

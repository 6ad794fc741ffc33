//! The truncated polynomial ring `Q[h]/(h^{n+1})` and the global residue
//! identity `φ(N_F) = Σ λ_Z [Z]`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::foliation::FoliationSpec;
use crate::poly::Rational;
use crate::residue::ChernMonomial;
use crate::singular::SingularComponent;
use crate::{Error, Result};

/// Element of `H^*(P^n; Q) = Q[h]/(h^{n+1})`, stored as coefficients of
/// `1, h, …, h^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    coeffs: Vec<Rational>,
}

impl CohomologyClass {
    pub fn zero(n: usize) -> Self {
        CohomologyClass { coeffs: vec![Rational::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Rational::one(), 0)
    }

    /// `c·h^k`, zero when `k > n`.
    pub fn monomial(n: usize, c: Rational, k: usize) -> Self {
        let mut out = Self::zero(n);
        if k <= n {
            out.coeffs[k] = c;
        }
        out
    }

    pub fn from_coeffs(n: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(n + 1, Rational::zero());
        coeffs.truncate(n + 1);
        CohomologyClass { coeffs }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CohomologyClass { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.ambient_dim());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "classes on different projective spaces");
    }
}

impl Add<&CohomologyClass> for &CohomologyClass {
    type Output = CohomologyClass;
    fn add(self, rhs: &CohomologyClass) -> CohomologyClass {
        self.check(rhs);
        CohomologyClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&CohomologyClass> for &CohomologyClass {
    type Output = CohomologyClass;
    fn sub(self, rhs: &CohomologyClass) -> CohomologyClass {
        self.check(rhs);
        CohomologyClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&CohomologyClass> for &CohomologyClass {
    type Output = CohomologyClass;
    fn mul(self, rhs: &CohomologyClass) -> CohomologyClass {
        self.check(rhs);
        let n = self.ambient_dim();
        let mut out = CohomologyClass::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "h")?;
                    } else {
                        write!(f, "h^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohomologyClass({self} in P^{})", self.ambient_dim())
    }
}

/// `[Z] = deg(Z)·h^{k+1}`.
pub fn component_class(z: &SingularComponent, n: usize, k: usize) -> Result<CohomologyClass> {
    class_of_degree(z.degree, n, k).map_err(|_| Error::Invalid(format!("component {} has degree 0", z.name)))
}

pub fn class_of_degree(degree: u32, n: usize, k: usize) -> Result<CohomologyClass> {
    if degree == 0 {
        return Err(Error::Invalid("component degree must be positive".into()));
    }
    Ok(CohomologyClass::monomial(n, Rational::from_integer(degree.into()), k + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCheck {
    pub lhs: CohomologyClass,
    pub rhs: CohomologyClass,
    /// `rhs - lhs`.
    pub discrepancy: CohomologyClass,
    pub passed: bool,
}

/// `φ(N_F)` from `c₁(N_F) = m·h`. Monomials that need `c_i(N_F)` for
/// `i ≥ 2` are rejected.
pub fn phi_of_normal_bundle(phi: &ChernMonomial, n: usize, m: i64) -> Result<CohomologyClass> {
    if phi.exponents().iter().skip(1).any(|&a| a > 0) {
        return Err(Error::Unsupported(format!(
            "{phi} involves higher Chern classes of the normal sheaf"
        )));
    }
    let c1 = CohomologyClass::monomial(n, Rational::from_integer(m.into()), 1);
    Ok(c1.pow(phi.exponents()[0]))
}

/// Compares `φ(N_F)` against `Σ λ_i deg(Z_i) h^{k+1}`; inputs are
/// `(degree, λ)` pairs.
pub fn global_check(
    f: &FoliationSpec,
    phi: &ChernMonomial,
    residues: &[(u32, Rational)],
) -> Result<GlobalCheck> {
    let n = f.ambient_dim();
    let k = f.codim();
    let m = f.twist_degree().ok_or_else(|| Error::Invalid("twist degree of det N_F unknown".into()))?;
    let lhs = phi_of_normal_bundle(phi, n, m)?;
    let mut rhs = CohomologyClass::zero(n);
    for (deg, lambda) in residues {
        rhs = &rhs + &class_of_degree(*deg, n, k)?.scale(lambda);
    }
    let discrepancy = &rhs - &lhs;
    Ok(GlobalCheck { passed: discrepancy.is_zero(), lhs, rhs, discrepancy })
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::order::{divides, grlex, TermOrder};
use super::{rat_to_f64, Rational};
use crate::{Error, Result};

/// Shared, ordered list of variable names.
pub type Vars = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

pub fn vars_from(names: Vec<String>) -> Vars {
    Arc::new(names)
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors of length `vars.len()`; zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial `x_i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let i = index_of(vars, name)?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars());
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `c * x^exps`.
    pub fn mul_term(&self, exps: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.terms.insert(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Substitutes a rational value for variable `i`; the variable list is kept.
    pub fn substitute(&self, i: usize, value: &Rational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            out.add_term(f, c * pow_rat(value, k));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= pow_rat(x, k);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut t = Complex64::new(rat_to_f64(c), 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable list.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| Arc::new(Vec::new()));
        let mut out = Self::zero(&target);
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); images.len()];
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(MultiPoly::one(&target));
                }
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[k as usize];
            }
            out += &t;
        }
        out
    }

    /// Shifts coordinates: returns `p(z + shift)`.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| {
                let mut v = MultiPoly::var(&self.vars, i);
                v.add_term(vec![0; self.nvars()], shift[i].clone());
                v
            })
            .collect();
        if images.is_empty() {
            return self.clone();
        }
        self.compose(&images)
    }

    /// Re-expresses the polynomial over another variable list, matching by
    /// name. Fails if a variable that occurs is missing from `target`.
    pub fn embed(&self, target: &Vars) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, target) || self.vars == *target {
            return Ok(MultiPoly { vars: target.clone(), terms: self.terms.clone() });
        }
        let used = self.support();
        let mut map = vec![None; self.nvars()];
        for &i in &used {
            map[i] = Some(index_of(target, &self.vars[i]).map_err(|_| {
                Error::VariableMismatch(format!(
                    "variable \"{}\" is not among {:?}",
                    self.vars[i], target
                ))
            })?);
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut f = vec![0; target.len()];
            for &i in &used {
                f[map[i].unwrap()] += e[i];
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Coefficient vector (low to high) when only variable `i` occurs.
    pub fn to_univariate(&self, i: usize) -> Result<Vec<Rational>> {
        if self.support().iter().any(|&j| j != i) {
            return Err(Error::Invalid(format!("{self} is not univariate in {}", self.vars[i])));
        }
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[i] as usize] = c.clone();
        }
        while out.len() > 1 && out.last().map_or(false, |c| c.is_zero()) {
            out.pop();
        }
        Ok(out)
    }

    pub fn from_univariate(vars: &Vars, i: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Collects by powers of variable `i`: `p = Σ_k coeffs[k] * x_i^k`, where
    /// the coefficients are free of `x_i`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            out.entry(k).or_insert_with(|| Self::zero(&self.vars)).add_term(f, c.clone());
        }
        out
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let order = TermOrder::Lex;
        let (dl, dc) = d.leading_term(order).map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((e, c)) = rem.leading_term(order).map(|(e, c)| (e.clone(), c.clone())) {
            if !divides(&dl, &e) {
                return None;
            }
            let m: Vec<u32> = e.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let q = c / &dc;
            rem -= &d.mul_term(&m, &q);
            quot.add_term(m, q);
        }
        Some(quot)
    }

    /// Keeps only terms whose exponents are componentwise below `bound`.
    pub fn truncate_box(&self, bound: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().zip(bound).all(|(a, b)| a < b))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

pub(crate) fn index_of(vars: &Vars, name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::VariableMismatch(format!("no variable named \"{name}\"")))
}

pub(crate) fn pow_rat(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self} in {:?})", self.vars)
    }
}

fn check_vars(a: &MultiPoly, b: &MultiPoly) {
    assert!(
        Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "polynomials over different variable lists: {:?} vs {:?}",
        a.vars,
        b.vars
    );
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        check_vars(self, rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        check_vars(self, rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};
    use proptest::prelude::*;

    fn xyz() -> Vars {
        vars(&["x", "y", "z"])
    }

    #[test]
    fn display_uses_parser_grammar() {
        let v = vars(&["x", "z"]);
        let p = parse_poly("2x^2 - x - z", &v).unwrap();
        assert_eq!(p.to_string(), "2*x^2 - x - z");
        let q = parse_poly("-1/2 + 2/9 z^3", &v).unwrap();
        assert_eq!(q.to_string(), "2/9*z^3 - 1/2");
        assert_eq!(parse_poly(&q.to_string(), &v).unwrap(), q);
    }

    #[test]
    fn compose_and_translate() {
        let v = xyz();
        let p = parse_poly("x*y - z", &v).unwrap();
        let t = vars(&["s"]);
        let s = MultiPoly::var(&t, 0);
        let img = vec![s.scale(&rat(2, 3)).pow(1), s.clone(), s.pow(2)];
        assert_eq!(p.compose(&img), s.pow(2).scale(&rat(-1, 3)));
        let q = parse_poly("x^2", &v).unwrap().translate(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(q, parse_poly("x^2 + 2x + 1", &v).unwrap());
    }

    #[test]
    fn exact_division() {
        let v = vars(&["x", "y"]);
        let a = parse_poly("x^2 - y^2", &v).unwrap();
        let b = parse_poly("x - y", &v).unwrap();
        assert_eq!(a.div_exact(&b).unwrap(), parse_poly("x + y", &v).unwrap());
        assert!(b.div_exact(&parse_poly("x + 1", &v).unwrap()).is_none());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(
            |ts| {
                MultiPoly::from_terms(
                    &xyz(),
                    ts.into_iter().map(|((a, b, c), n, d)| (vec![a, b, c], rat(n, d))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn distributive(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        }

        #[test]
        fn leibniz(f in arb_poly(), g in arb_poly(), i in 0usize..3) {
            let lhs = (&f * &g).derivative(i);
            let rhs = &(&f * &g.derivative(i)) + &(&g * &f.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_roundtrips(f in arb_poly()) {
            prop_assert_eq!(parse_poly(&f.to_string(), &xyz()).unwrap(), f);
        }
    }
}

//! Univariate helpers, Sylvester resultants and root finding.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::multipoly::MultiPoly;
use super::{rat_to_f64, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial over `Q`, coefficients low to high.
///
/// The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        UniPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead = d.lead();
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in d.0.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn primitive_integer(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Sylvester resultant of `f` and `g` with respect to variable `var`.
///
/// Both inputs must be nonzero. The result lives in the same variable list
/// and is free of `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of a zero polynomial");
    let vars = f.vars().clone();
    let cf = f.coefficients_in(var);
    let cg = g.coefficients_in(var);
    let m = *cf.keys().max().unwrap() as usize;
    let n = *cg.keys().max().unwrap() as usize;
    if m == 0 && n == 0 {
        return MultiPoly::one(&vars);
    }
    if m == 0 {
        return f.pow(n as u32);
    }
    if n == 0 {
        return g.pow(m as u32);
    }
    let size = m + n;
    let zero = MultiPoly::zero(&vars);
    let coeff = |c: &std::collections::BTreeMap<u32, MultiPoly>, k: usize| {
        c.get(&(k as u32)).cloned().unwrap_or_else(|| zero.clone())
    };
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[r + k] = coeff(&cf, m - k);
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[r + k] = coeff(&cg, n - k);
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Fraction-free determinant; entries are exact polynomials.
pub(crate) fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    let mut sign = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = MultiPoly::zero(&vars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rational roots with multiplicities, plus the cofactor free of rational roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalRoots {
    pub roots: Vec<(Rational, u32)>,
    pub residual: UniPoly,
}

/// All rational roots of a nonzero univariate polynomial, by the rational
/// root theorem with deflation.
pub fn rational_roots(p: &UniPoly) -> RationalRoots {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let mut ints = p.primitive_integer();
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((Rational::zero(), zeros as u32));
        ints.drain(..zeros);
    }
    loop {
        if ints.len() <= 1 {
            break;
        }
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let mut found = None;
        'search: for q in divisors(&an) {
            for pp in divisors(&a0) {
                if pp.gcd(&q) != BigInt::one() {
                    continue;
                }
                for s in [1, -1] {
                    let cand = Rational::new(pp.clone() * s, q.clone());
                    if eval_int(&ints, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            None => break,
            Some(r) => {
                let mut mult = 0;
                let poly = UniPoly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
                let lin = UniPoly::new(vec![
                    Rational::from_integer(-r.numer().clone()),
                    Rational::from_integer(r.denom().clone()),
                ]);
                let mut cur = poly;
                loop {
                    let (q, rem) = cur.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    cur = q;
                    mult += 1;
                }
                roots.push((r, mult));
                ints = cur.primitive_integer();
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let residual = UniPoly::new(ints.into_iter().map(Rational::from_integer).collect());
    RationalRoots { roots, residual }
}

fn eval_int(ints: &[BigInt], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in ints.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    acc
}

/// Positive divisors by trial division. Cofactors left after trial division
/// up to 10^7 are treated as prime, which is exact below 10^14.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(10_000_000u64);
    while &d * &d <= n && d <= limit {
        let mut k = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            k += 1;
        }
        if k > 0 {
            primes.push((d.clone(), k));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, k) in primes {
        let mut next = Vec::new();
        for x in &out {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(x * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Complex roots of a univariate polynomial by Aberth–Ehrlich iteration,
/// polished with Newton steps.
pub fn complex_roots(p: &UniPoly) -> Vec<Complex64> {
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let lead = rat_to_f64(&p.lead());
    let c: Vec<Complex64> = p.0.iter().map(|x| Complex64::new(rat_to_f64(x) / lead, 0.0)).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + a;
        }
        (v, dv)
    };
    let bound = 1.0 + c[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(0.5 * bound, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*zi);
            if dv.norm() > 0.0 {
                let step = v / dv;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// Best rational approximation of `x` by continued fractions, accepting the
/// first convergent within `tol`.
pub fn rationalize(x: f64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a.to_i64()?);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        let approx = Rational::new(h2.clone(), k2.clone());
        if (rat_to_f64(&approx) - x).abs() <= tol {
            return Some(approx);
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            return Some(approx);
        }
        r = 1.0 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

pub(crate) fn to_error_non_univariate(p: &MultiPoly) -> Error {
    Error::Invalid(format!("{p} is not univariate"))
}

impl TryFrom<&MultiPoly> for UniPoly {
    type Error = Error;
    fn try_from(p: &MultiPoly) -> Result<Self> {
        match p.support().as_slice() {
            [] => Ok(UniPoly::new(vec![p.constant_term()])),
            [i] => Ok(UniPoly::new(p.to_univariate(*i)?)),
            _ => Err(to_error_non_univariate(p)),
        }
    }
}

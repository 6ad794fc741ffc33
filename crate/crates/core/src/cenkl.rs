//! Elementary symmetric functions in `n` versus `n+1` variables, the
//! decomposition `ψ(ρ) = φ(σ) y + φ⁰(σ) + Σ_{j≥2} φʲ(σ) yʲ`, its lift, and the
//! cohomology ring of the `P¹`-bundle `P(L ⊕ L)` with `L = det(N_F)^∨`.
//!
//! Here `ρ_j = σ_j + y σ_{j-1}` (with `σ_0 = 1`) are the elementary symmetric
//! functions of `x_1, …, x_n, y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::chern::CohomologyClass;
use crate::foliation::FoliationSpec;
use crate::poly::{parse_poly, vars_from, MultiPoly, Rational, Vars};
use crate::{Error, Result};

/// Largest generator index accepted by the parser.
pub const MAX_GENERATORS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `σ_1, σ_2, …`, written `s1, s2, …`.
    Sigma,
    /// `ρ_1, ρ_2, …`, written `r1, r2, …`.
    Rho,
}

impl Alphabet {
    fn prefix(self) -> &'static str {
        match self {
            Alphabet::Sigma => "s",
            Alphabet::Rho => "r",
        }
    }

    pub fn vars(self, n: usize) -> Vars {
        vars_from((1..=n).map(|i| format!("{}{i}", self.prefix())).collect())
    }
}

/// Polynomial in the generators of one alphabet; generator `i` has weight `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymPoly {
    alphabet: Alphabet,
    poly: MultiPoly,
}

impl SymPoly {
    /// `poly` must use the variables of [`Alphabet::vars`].
    pub fn new(alphabet: Alphabet, poly: MultiPoly) -> Result<Self> {
        let n = poly.nvars();
        let poly = poly.embed(&alphabet.vars(n))?;
        Ok(SymPoly { alphabet, poly }.trimmed())
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let poly = parse_poly(text, &alphabet.vars(MAX_GENERATORS))?;
        Ok(SymPoly { alphabet, poly }.trimmed())
    }

    pub fn zero(alphabet: Alphabet) -> Self {
        SymPoly { alphabet, poly: MultiPoly::zero(&alphabet.vars(0)) }
    }

    pub fn monomial(alphabet: Alphabet, exps: Vec<u32>, c: Rational) -> Self {
        let v = alphabet.vars(exps.len());
        SymPoly { alphabet, poly: MultiPoly::monomial(&v, exps, c) }.trimmed()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// Number of generators in use.
    pub fn generators(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Drops trailing generators that do not occur.
    fn trimmed(self) -> Self {
        let used = self.poly.support().into_iter().max().map_or(0, |i| i + 1);
        if used == self.poly.nvars() {
            return self;
        }
        let poly = self.poly.embed(&self.alphabet.vars(used)).expect("unused generators dropped");
        SymPoly { alphabet: self.alphabet, poly }
    }

    fn widened(&self, n: usize) -> MultiPoly {
        self.poly.embed(&self.alphabet.vars(n.max(self.generators()))).expect("wider alphabet")
    }

    /// Weights of the terms that occur.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.poly.terms().map(|(e, _)| weight_of(e)).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The common weight; `None` for zero or non-homogeneous input.
    pub fn weight(&self) -> Option<u32> {
        match self.weights().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }
}

fn weight_of(e: &[u32]) -> u32 {
    e.iter().enumerate().map(|(i, a)| (i as u32 + 1) * a).sum()
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly({:?}, {})", self.alphabet, self.poly)
    }
}

/// `ψ(ρ)` expanded as `Σ_k coeff_k(σ) y^k`.
pub fn rho_to_sigma(psi: &SymPoly) -> Result<BTreeMap<u32, SymPoly>> {
    if psi.alphabet != Alphabet::Rho {
        return Err(Error::Invalid("expected a polynomial in r1, r2, …".into()));
    }
    let n = psi.generators();
    let mut names: Vec<String> = Alphabet::Sigma.vars(n).iter().cloned().collect();
    names.push("y".into());
    let sy = vars_from(names);
    let y = MultiPoly::var(&sy, n);
    let images: Vec<MultiPoly> = (0..n)
        .map(|j| {
            let below = if j == 0 { MultiPoly::one(&sy) } else { MultiPoly::var(&sy, j - 1) };
            &MultiPoly::var(&sy, j) + &(&y * &below)
        })
        .collect();
    let expanded = psi.poly.compose(&images);
    let sv = Alphabet::Sigma.vars(n);
    let mut out = BTreeMap::new();
    for (k, c) in expanded.coefficients_in(n) {
        let mut p = MultiPoly::zero(&sv);
        for (e, v) in c.terms() {
            p.add_term(e[..n].to_vec(), v.clone());
        }
        out.insert(k, SymPoly::new(Alphabet::Sigma, p)?);
    }
    Ok(out)
}

/// `φ = [y¹]`, `φ⁰ = [y⁰]`, `φʲ = [yʲ]` for `j ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenklDecomposition {
    /// Weight `ℓ` of `φ`; `ψ` has weight `ℓ + 1`.
    pub weight: u32,
    pub phi: SymPoly,
    pub phi0: SymPoly,
    pub higher: BTreeMap<u32, SymPoly>,
}

impl CenklDecomposition {
    /// `φ y + φ⁰ + Σ φʲ yʲ` as a map from powers of `y`.
    pub fn reassemble(&self) -> BTreeMap<u32, SymPoly> {
        let mut out = BTreeMap::new();
        for (k, p) in std::iter::once((0, &self.phi0)).chain(std::iter::once((1, &self.phi))).chain(self.higher.iter().map(|(k, p)| (*k, p))) {
            if !p.is_zero() {
                out.insert(k, p.clone());
            }
        }
        out
    }
}

pub fn decompose(psi: &SymPoly) -> Result<CenklDecomposition> {
    let w = psi
        .weight()
        .ok_or_else(|| Error::Invalid(format!("{psi} is not weighted-homogeneous")))?;
    if w == 0 {
        return Err(Error::Invalid("ψ must have positive weight".into()));
    }
    let mut parts = rho_to_sigma(psi)?;
    let phi0 = parts.remove(&0).unwrap_or_else(|| SymPoly::zero(Alphabet::Sigma));
    let phi = parts.remove(&1).unwrap_or_else(|| SymPoly::zero(Alphabet::Sigma));
    Ok(CenklDecomposition { weight: w - 1, phi, phi0, higher: parts })
}

/// Exponent vectors of all monomials of weight `w` in generators `1..=w`,
/// in increasing graded-lex order.
pub fn weight_basis(w: u32) -> Vec<Vec<u32>> {
    fn go(w: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, n: usize) {
        if w == 0 {
            let mut e = vec![0u32; n];
            for &p in acc.iter() {
                e[p as usize - 1] += 1;
            }
            out.push(e);
            return;
        }
        for p in (1..=max_part.min(w)).rev() {
            acc.push(p);
            go(w - p, p, acc, out, n);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, &mut Vec::new(), &mut out, w as usize);
    out.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    out
}

/// Unique solution of `A c = b` when `A` has full column rank.
fn solve_full_rank(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b).map(|(r, v)| {
        let mut r = r.clone();
        r.push(v.clone());
        r
    }).collect();
    let mut row = 0;
    for c in 0..cols {
        let piv = (row..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(row, piv);
        let p = m[row][c].clone();
        for x in m[row].iter_mut() {
            *x /= &p;
        }
        for i in 0..rows {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Largest weight-`ℓ+1` basis searched exhaustively by [`lift`].
pub const MAX_LIFT_BASIS: usize = 20;

/// A `ψ` of weight `ℓ+1` with `decompose(ψ).phi = φ`. Among all solutions
/// the sparsest one with integer coefficients is returned, falling back to
/// the sparsest rational one. Ties go to the support whose monomials, listed
/// in increasing graded-lex order, compare smallest.
pub fn lift(phi: &SymPoly) -> Result<SymPoly> {
    if phi.alphabet != Alphabet::Sigma {
        return Err(Error::Invalid("expected a polynomial in s1, s2, …".into()));
    }
    if phi.is_zero() {
        return Ok(SymPoly::zero(Alphabet::Rho));
    }
    let l = phi.weight().ok_or_else(|| Error::Invalid(format!("{phi} is not weighted-homogeneous")))?;
    let basis = weight_basis(l + 1);
    if basis.len() > MAX_LIFT_BASIS {
        return Err(Error::ResourceLimit { stage: "lift", budget: MAX_LIFT_BASIS });
    }
    let n = (l + 1) as usize;
    let columns: Vec<MultiPoly> = basis
        .iter()
        .map(|e| {
            let psi = SymPoly::monomial(Alphabet::Rho, e.clone(), Rational::one());
            let y1 = rho_to_sigma(&psi).expect("rho input").remove(&1).unwrap_or_else(|| SymPoly::zero(Alphabet::Sigma));
            y1.widened(n)
        })
        .collect();
    let target = phi.widened(n);
    let rows: Vec<Vec<u32>> = weight_basis(l).into_iter().map(|mut e| {
        e.resize(n, 0);
        e
    }).collect();
    let b: Vec<Rational> = rows.iter().map(|e| target.coeff(e)).collect();

    let mut best_rational: Option<Vec<(usize, Rational)>> = None;
    for size in 1..=basis.len() {
        let mut integer: Option<Vec<(usize, Rational)>> = None;
        for support in subsets(basis.len(), size) {
            let a: Vec<Vec<Rational>> = rows.iter().map(|e| support.iter().map(|&j| columns[j].coeff(e)).collect()).collect();
            let Some(c) = solve_full_rank(&a, &b) else { continue };
            if c.iter().any(|x| x.is_zero()) {
                continue;
            }
            let sol: Vec<(usize, Rational)> = support.iter().copied().zip(c).collect();
            if sol.iter().all(|(_, x)| x.is_integer()) {
                if integer.is_none() {
                    integer = Some(sol);
                }
            } else if best_rational.is_none() {
                best_rational = Some(sol);
            }
        }
        if let Some(sol) = integer {
            return Ok(assemble(&basis, &sol));
        }
    }
    best_rational
        .map(|sol| assemble(&basis, &sol))
        .ok_or_else(|| Error::Invalid(format!("no lift of {phi} exists")))
}

fn assemble(basis: &[Vec<u32>], sol: &[(usize, Rational)]) -> SymPoly {
    let n = basis[0].len();
    let v = Alphabet::Rho.vars(n);
    let mut p = MultiPoly::zero(&v);
    for (j, c) in sol {
        p.add_term(basis[*j].clone(), c.clone());
    }
    SymPoly::new(Alphabet::Rho, p).expect("rho alphabet")
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// One step of the bundle tower: `(dim S, dim F) ↦ (dim S + 1, dim F)`.
pub fn bundle_dimension_shift(dim_s: usize, dim_f: usize) -> Result<(usize, usize)> {
    if dim_s >= dim_f {
        return Err(Error::Invalid(format!(
            "singular set of dimension {dim_s} is not below the leaf dimension {dim_f}"
        )));
    }
    Ok((dim_s + 1, dim_f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub dim_m: usize,
    pub dim_f: usize,
    pub dim_s: usize,
}

impl TowerLevel {
    pub fn codim_f(&self) -> usize {
        self.dim_m - self.dim_f
    }

    pub fn codim_s(&self) -> usize {
        self.dim_m - self.dim_s
    }
}

/// Iterates the bundle construction until the singular set has the expected
/// codimension `codim F + 1`. Each step adds one to the ambient and singular
/// dimensions.
pub fn tower(start: TowerLevel) -> Result<Vec<TowerLevel>> {
    if start.dim_f > start.dim_m || start.dim_s >= start.dim_m {
        return Err(Error::Invalid("inconsistent dimensions".into()));
    }
    if start.codim_s() <= start.codim_f() {
        return Err(Error::Invalid("singular set must have codimension above the foliation's".into()));
    }
    let mut out = vec![start];
    let mut cur = start;
    while cur.codim_s() > cur.codim_f() + 1 {
        let (dim_s, dim_f) = bundle_dimension_shift(cur.dim_s, cur.dim_f)?;
        cur = TowerLevel { dim_m: cur.dim_m + 1, dim_f, dim_s };
        out.push(cur);
    }
    Ok(out)
}

/// Element `a(h) + b(h) ξ` of `Q[h, ξ]/(h^{n+1}, ξ² − 2m h ξ + m² h²)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BundleRingClass {
    m: i64,
    a: CohomologyClass,
    b: CohomologyClass,
}

impl BundleRingClass {
    pub fn zero(n: usize, m: i64) -> Self {
        BundleRingClass { m, a: CohomologyClass::zero(n), b: CohomologyClass::zero(n) }
    }

    pub fn from_base(m: i64, a: CohomologyClass) -> Self {
        let n = a.ambient_dim();
        BundleRingClass { m, a, b: CohomologyClass::zero(n) }
    }

    pub fn xi(n: usize, m: i64) -> Self {
        BundleRingClass { m, a: CohomologyClass::zero(n), b: CohomologyClass::one(n) }
    }

    pub fn h(n: usize, m: i64) -> Self {
        Self::from_base(m, CohomologyClass::monomial(n, Rational::one(), 1))
    }

    /// `c₁(T_{P/M}) = 2ξ − 2m h`.
    pub fn relative_tangent(n: usize, m: i64) -> Self {
        let two = Rational::from_integer(2.into());
        &Self::xi(n, m).scale(&two) - &Self::h(n, m).scale(&Rational::from_integer((2 * m).into()))
    }

    pub fn base_part(&self) -> &CohomologyClass {
        &self.a
    }

    pub fn xi_part(&self) -> &CohomologyClass {
        &self.b
    }

    pub fn twist(&self) -> i64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BundleRingClass { m: self.m, a: self.a.scale(c), b: self.b.scale(c) }
    }

    pub fn pow(&self, k: u32) -> Self {
        let n = self.a.ambient_dim();
        let mut out = Self::from_base(self.m, CohomologyClass::one(n));
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Complex degrees `i + j` of the monomials `h^i ξ^j` that occur.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .a
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .chain(self.b.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i + 1))
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "classes on different bundles");
    }
}

impl std::ops::Add<&BundleRingClass> for &BundleRingClass {
    type Output = BundleRingClass;
    fn add(self, rhs: &BundleRingClass) -> BundleRingClass {
        self.check(rhs);
        BundleRingClass { m: self.m, a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl std::ops::Sub<&BundleRingClass> for &BundleRingClass {
    type Output = BundleRingClass;
    fn sub(self, rhs: &BundleRingClass) -> BundleRingClass {
        self.check(rhs);
        BundleRingClass { m: self.m, a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl std::ops::Mul<&BundleRingClass> for &BundleRingClass {
    type Output = BundleRingClass;
    fn mul(self, rhs: &BundleRingClass) -> BundleRingClass {
        self.check(rhs);
        let n = self.a.ambient_dim();
        let m = Rational::from_integer(self.m.into());
        let h = CohomologyClass::monomial(n, Rational::one(), 1);
        let bd = &self.b * &rhs.b;
        // ξ² = 2m h ξ − m² h²
        let a = &(&self.a * &rhs.a) - &(&bd * &h.pow(2)).scale(&(&m * &m));
        let b = &(&(&self.a * &rhs.b) + &(&self.b * &rhs.a)) + &(&bd * &h).scale(&(&m + &m));
        BundleRingClass { m: self.m, a, b }
    }
}

impl fmt::Display for BundleRingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(self.a.to_string());
        }
        if !self.b.is_zero() {
            parts.push(format!("({})*xi", self.b));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for BundleRingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BundleRingClass({self}; m = {})", self.m)
    }
}

/// Value of a σ-polynomial on the Chern classes of a rank-one normal sheaf
/// with `c₁ = m h`: `σ_1 ↦ m h`, `σ_j ↦ 0` for `j ≥ 2`.
pub fn eval_rank_one(p: &SymPoly, n: usize, m: i64) -> Result<CohomologyClass> {
    if p.alphabet != Alphabet::Sigma {
        return Err(Error::Invalid("expected a polynomial in s1, s2, …".into()));
    }
    let c1 = CohomologyClass::monomial(n, Rational::from_integer(m.into()), 1);
    let mut out = CohomologyClass::zero(n);
    for (e, c) in p.poly.terms() {
        if e.iter().skip(1).any(|&a| a > 0) {
            continue;
        }
        let k = e.first().copied().unwrap_or(0);
        out = &out + &c1.pow(k).scale(c);
    }
    Ok(out)
}

/// `π^*(λ [Z]) ∩ c₁(T) + π^* φ⁰(N_F) + Σ_{j≥2} π^* φʲ(N_F) ∩ c₁(T)ʲ`, evaluated
/// in the cohomology ring of `P(E_F)`.
pub fn bundle_rhs(lambda: &Rational, degree: u32, f: &FoliationSpec, decomposition: &CenklDecomposition) -> Result<BundleRingClass> {
    let n = f.ambient_dim();
    let k = f.codim();
    let m = f.twist_degree().ok_or_else(|| Error::Invalid("twist degree of det N_F unknown".into()))?;
    if decomposition.weight as usize != k + 1 {
        return Err(Error::Invalid(format!(
            "decomposition of weight {} does not match φ of weight {}",
            decomposition.weight,
            k + 1
        )));
    }
    if let Some(w) = decomposition.phi.weight() {
        if w != decomposition.weight {
            return Err(Error::Invalid("φ slot has the wrong weight".into()));
        }
    }
    let t = BundleRingClass::relative_tangent(n, m);
    let z = crate::chern::class_of_degree(degree, n, k)?.scale(lambda);
    let mut out = &BundleRingClass::from_base(m, z) * &t;
    out = &out + &BundleRingClass::from_base(m, eval_rank_one(&decomposition.phi0, n, m)?);
    for (j, p) in &decomposition.higher {
        let base = BundleRingClass::from_base(m, eval_rank_one(p, n, m)?);
        out = &out + &(&base * &t.pow(*j));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn rho(t: &str) -> SymPoly {
        SymPoly::parse(t, Alphabet::Rho).unwrap()
    }

    fn sigma(t: &str) -> SymPoly {
        SymPoly::parse(t, Alphabet::Sigma).unwrap()
    }

    fn expansion(t: &str) -> Vec<(u32, String)> {
        rho_to_sigma(&rho(t)).unwrap().into_iter().map(|(k, p)| (k, p.to_string())).collect()
    }

    #[test]
    fn rho_expansions() {
        assert_eq!(expansion("r1^2"), vec![(0, "s1^2".into()), (1, "2*s1".into()), (2, "1".into())]);
        assert_eq!(expansion("r2"), vec![(0, "s2".into()), (1, "s1".into())]);
        assert_eq!(
            expansion("r1*r2 - r3"),
            vec![(0, "s1*s2 - s3".into()), (1, "s1^2".into()), (2, "s1".into())]
        );
    }

    #[test]
    fn decompositions() {
        let d = decompose(&rho("r2")).unwrap();
        assert_eq!((d.phi.to_string(), d.phi0.to_string(), d.higher.len()), ("s1".into(), "s2".into(), 0));
        let d = decompose(&rho("r1 r2 - r3")).unwrap();
        assert_eq!(d.weight, 2);
        assert_eq!(d.phi, sigma("s1^2"));
        assert_eq!(d.phi0, sigma("s1 s2 - s3"));
        assert_eq!(d.higher[&2], sigma("s1"));
        let d = decompose(&rho("r1^2")).unwrap();
        assert_eq!(d.phi, sigma("2 s1"));
        assert_eq!(d.phi0, sigma("s1^2"));
        assert_eq!(d.higher[&2], sigma("1"));
        assert!(decompose(&rho("r1 + r2")).is_err());
    }

    #[test]
    fn lifts() {
        assert_eq!(lift(&sigma("s1")).unwrap(), rho("r2"));
        assert_eq!(lift(&sigma("s1^2")).unwrap(), rho("r1 r2 - r3"));
        for t in ["s1", "s1^2", "s2", "s1^3", "s1 s2", "s3", "3 s1 s2 - s3/2"] {
            let phi = sigma(t);
            assert_eq!(decompose(&lift(&phi).unwrap()).unwrap().phi, phi, "{t}");
        }
    }

    #[test]
    fn weight_bases() {
        assert_eq!(weight_basis(3).len(), 3);
        assert_eq!(weight_basis(4).len(), 5);
        assert_eq!(weight_basis(2), vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn tower_steps() {
        assert_eq!(bundle_dimension_shift(0, 2).unwrap(), (1, 2));
        assert!(bundle_dimension_shift(1, 1).is_err());
        // k = 1, codim S = k + s with s = 3 on P^5: two steps
        let t = tower(TowerLevel { dim_m: 5, dim_f: 4, dim_s: 1 }).unwrap();
        assert_eq!(t.len(), 3);
        let last = t.last().unwrap();
        assert_eq!(last.codim_s(), last.codim_f() + 1);
    }

    #[test]
    fn bundle_ring_relations() {
        let (n, m) = (3, 4);
        let xi = BundleRingClass::xi(n, m);
        let h = BundleRingClass::h(n, m);
        let mr = Rational::from_integer(m.into());
        let lhs = &xi * &xi;
        let rhs = &(&h * &xi).scale(&(&mr + &mr)) - &(&h * &h).scale(&(&mr * &mr));
        assert_eq!(lhs, rhs);
        let d = &xi - &h.scale(&mr);
        assert!((&d * &d).is_zero());
        assert!(BundleRingClass::relative_tangent(n, m).pow(2).is_zero());
        assert!(h.pow(4).is_zero());
    }

    #[test]
    fn rank_one_evaluation() {
        assert_eq!(eval_rank_one(&sigma("s1 s2 - s3"), 3, 4).unwrap(), CohomologyClass::zero(3));
        assert_eq!(eval_rank_one(&sigma("s1"), 3, 4).unwrap(), CohomologyClass::monomial(3, rat(4, 1), 1));
    }

    #[test]
    fn bundle_rhs_regression() {
        let v = crate::poly::vars(&["X", "Y", "Z", "T"]);
        let coeffs = ["Y Z T", "X Z T", "X Y T", "-3 X Y Z"].iter().map(|t| parse_poly(t, &v).unwrap()).collect();
        let f = FoliationSpec::from_homogeneous(&v, coeffs).unwrap();
        let d = decompose(&lift(&sigma("s1^2")).unwrap()).unwrap();
        let r = bundle_rhs(&rat(16, 3), 1, &f, &d).unwrap();
        let h = BundleRingClass::h(3, 4);
        let xi = BundleRingClass::xi(3, 4);
        let expected = &(&(&h * &h) * &xi).scale(&rat(32, 3)) - &h.pow(3).scale(&rat(128, 3));
        assert_eq!(r, expected);
        assert_eq!(r.degrees(), vec![3]);
        let wrong = decompose(&rho("r2")).unwrap();
        assert!(bundle_rhs(&rat(16, 3), 1, &f, &wrong).is_err());
    }
}

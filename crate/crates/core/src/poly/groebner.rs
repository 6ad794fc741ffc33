//! Buchberger's algorithm over `Q` with the product and chain criteria,
//! optional tracking of cofactors with respect to the input generators, and
//! the derived ideal-theoretic queries (membership, quotient dimension).

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::multipoly::{MultiPoly, Vars};
use super::order::{coprime, divides, lcm, TermOrder};
use super::Rational;
use crate::{Error, Result};

/// Default number of S-pair reductions before giving up.
pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerOptions {
    pub max_reductions: usize,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { max_reductions: DEFAULT_STEP_BUDGET }
    }
}

/// Polynomial ideal given by generators and a fixed term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Vars,
    generators: Vec<MultiPoly>,
    order: TermOrder,
}

/// Reduced Gröbner basis together with the expression of every basis element
/// in terms of the original generators: `basis[i] = Σ_j representation[i][j] * gens[j]`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub basis: Ideal,
    pub generators: Vec<MultiPoly>,
    pub representation: Vec<Vec<MultiPoly>>,
}

/// Result of dividing by an ordered list: `f = Σ quotients[i] * g_i + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub remainder: MultiPoly,
    pub quotients: Vec<MultiPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl Ideal {
    /// Zero generators are dropped; all generators are re-expressed over `vars`.
    pub fn new(vars: &Vars, generators: Vec<MultiPoly>, order: TermOrder) -> Result<Self> {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.embed(vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal { vars: vars.clone(), generators, order })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn groebner(&self, opts: &GroebnerOptions) -> Result<Ideal> {
        Ok(run(self, opts, false)?.0)
    }

    pub fn groebner_with_cofactors(&self, opts: &GroebnerOptions) -> Result<GroebnerBasis> {
        let (basis, rep) = run(self, opts, true)?;
        Ok(GroebnerBasis {
            basis,
            generators: self.generators.clone(),
            representation: rep.expect("tracking was requested"),
        })
    }

    /// Division by the generators in their stored order. When the generators
    /// form a Gröbner basis the remainder is the normal form.
    pub fn normal_form(&self, f: &MultiPoly) -> Division {
        divide(f, &self.generators, self.order)
    }

    /// True when the generators contain a nonzero constant, i.e. for a
    /// reduced basis, the unit ideal.
    pub fn is_unit_basis(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant())
    }

    pub fn is_unit(&self, opts: &GroebnerOptions) -> Result<bool> {
        Ok(self.groebner(opts)?.is_unit_basis())
    }

    pub fn contains(&self, f: &MultiPoly, opts: &GroebnerOptions) -> Result<bool> {
        let g = self.groebner(opts)?;
        Ok(g.normal_form(&f.embed(&self.vars)?).remainder.is_zero())
    }

    /// Dimension of `Q[vars]/I` counted by standard monomials.
    pub fn quotient_dimension(&self, opts: &GroebnerOptions) -> Result<QuotientDim> {
        let g = self.groebner(opts)?;
        if g.generators.is_empty() {
            return Ok(QuotientDim::Infinite);
        }
        if g.is_unit_basis() {
            return Ok(QuotientDim::Finite(0));
        }
        let leads: Vec<Vec<u32>> =
            g.generators.iter().map(|p| p.leading_term(g.order).unwrap().0.clone()).collect();
        let n = self.vars.len();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = leads
                .iter()
                .filter(|e| e.iter().enumerate().all(|(j, &k)| j == i || k == 0) && e[i] > 0)
                .map(|e| e[i])
                .min();
            match pure {
                Some(a) => bounds.push(a),
                None => return Ok(QuotientDim::Infinite),
            }
        }
        let mut count = 0usize;
        let mut e = vec![0u32; n];
        loop {
            if !leads.iter().any(|l| divides(l, &e)) {
                count += 1;
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(QuotientDim::Finite(count));
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    /// Same generators under another order.
    pub fn with_order(&self, order: TermOrder) -> Ideal {
        Ideal { vars: self.vars.clone(), generators: self.generators.clone(), order }
    }
}

impl GroebnerBasis {
    /// Cofactors of `f` with respect to the original generators, or `None`
    /// when `f` is not in the ideal.
    pub fn lift(&self, f: &MultiPoly) -> Result<Option<Vec<MultiPoly>>> {
        let f = f.embed(&self.basis.vars)?;
        let div = self.basis.normal_form(&f);
        if !div.remainder.is_zero() {
            return Ok(None);
        }
        let vars = &self.basis.vars;
        let mut out = vec![MultiPoly::zero(vars); self.generators.len()];
        for (q, rep) in div.quotients.iter().zip(&self.representation) {
            if q.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep) {
                *o += &(q * r);
            }
        }
        Ok(Some(out))
    }
}

pub fn groebner(ideal: &Ideal) -> Result<Ideal> {
    ideal.groebner(&GroebnerOptions::default())
}

pub fn normal_form(f: &MultiPoly, basis: &Ideal) -> Division {
    basis.normal_form(f)
}

pub fn quotient_dimension(ideal: &Ideal) -> Result<QuotientDim> {
    ideal.quotient_dimension(&GroebnerOptions::default())
}

type Terms = Vec<(Vec<u32>, Rational)>;

/// Working polynomial: terms sorted ascending, so the leading term is last.
#[derive(Clone)]
struct Elem {
    terms: Terms,
    cof: Option<Vec<MultiPoly>>,
}

impl Elem {
    fn lead(&self) -> Option<&(Vec<u32>, Rational)> {
        self.terms.last()
    }
}

fn to_terms(p: &MultiPoly, order: TermOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    t
}

fn from_terms(vars: &Vars, t: Terms) -> MultiPoly {
    MultiPoly::from_terms(vars, t)
}

/// `p - c * x^m * g`, both inputs ascending.
fn sub_scaled(p: &Terms, c: &Rational, m: &[u32], g: &Terms, order: TermOrder) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &(Vec<u32>, Rational)| -> (Vec<u32>, Rational) {
        (t.0.iter().zip(m).map(|(a, b)| a + b).collect(), &t.1 * c)
    };
    let mut gj = g.first().map(shifted);
    while i < p.len() || gj.is_some() {
        match (p.get(i), gj.as_ref()) {
            (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.0.clone(), -b.1.clone()));
                    j += 1;
                    gj = g.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let v = &a.1 - &b.1;
                    if !v.is_zero() {
                        out.push((a.0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(shifted);
                }
            },
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(b)) => {
                out.push((b.0.clone(), -b.1.clone()));
                j += 1;
                gj = g.get(j).map(shifted);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn sub_cof(p: &mut Option<Vec<MultiPoly>>, c: &Rational, m: &[u32], g: &Option<Vec<MultiPoly>>) {
    if let (Some(pc), Some(gc)) = (p.as_mut(), g.as_ref()) {
        for (a, b) in pc.iter_mut().zip(gc) {
            if !b.is_zero() {
                *a -= &b.mul_term(m, c);
            }
        }
    }
}

/// Fully reduces `p` by `basis` (every term, not only the leading one).
fn reduce_full(p: Elem, basis: &[Elem], skip: Option<usize>, order: TermOrder) -> Elem {
    let mut work = p.terms;
    let mut cof = p.cof;
    let mut rem: Terms = Vec::new();
    while let Some((le, lc)) = work.last().cloned() {
        let hit = basis.iter().enumerate().find(|(k, g)| {
            Some(*k) != skip && g.lead().map_or(false, |(ge, _)| divides(ge, &le))
        });
        match hit {
            Some((_, g)) => {
                let (ge, gc) = g.lead().unwrap();
                let m: Vec<u32> = le.iter().zip(ge).map(|(a, b)| a - b).collect();
                let c = &lc / gc;
                work = sub_scaled(&work, &c, &m, &g.terms, order);
                sub_cof(&mut cof, &c, &m, &g.cof);
            }
            None => {
                rem.push(work.pop().unwrap());
            }
        }
    }
    rem.reverse();
    Elem { terms: rem, cof }
}

fn make_monic(e: &mut Elem) {
    let lc = match e.lead() {
        Some((_, c)) => c.clone(),
        None => return,
    };
    if lc.is_one() {
        return;
    }
    let inv = Rational::one() / lc;
    for t in e.terms.iter_mut() {
        t.1 *= &inv;
    }
    if let Some(c) = e.cof.as_mut() {
        for p in c.iter_mut() {
            *p = p.scale(&inv);
        }
    }
}

fn spoly(a: &Elem, b: &Elem, order: TermOrder) -> Elem {
    let (ae, ac) = a.lead().unwrap();
    let (be, bc) = b.lead().unwrap();
    let l = lcm(ae, be);
    let ma: Vec<u32> = l.iter().zip(ae).map(|(x, y)| x - y).collect();
    let mb: Vec<u32> = l.iter().zip(be).map(|(x, y)| x - y).collect();
    let ca = Rational::one() / ac;
    let cb = Rational::one() / bc;
    // (1/ac) x^ma a - (1/bc) x^mb b
    let zero: Terms = Vec::new();
    let first = sub_scaled(&zero, &-ca.clone(), &ma, &a.terms, order);
    let terms = sub_scaled(&first, &cb, &mb, &b.terms, order);
    let cof = match (&a.cof, &b.cof) {
        (Some(x), Some(y)) => Some(
            x.iter()
                .zip(y)
                .map(|(p, q)| &p.mul_term(&ma, &ca) - &q.mul_term(&mb, &cb))
                .collect(),
        ),
        _ => None,
    };
    Elem { terms, cof }
}

fn run(ideal: &Ideal, opts: &GroebnerOptions, track: bool) -> Result<(Ideal, Option<Vec<Vec<MultiPoly>>>)> {
    let order = ideal.order;
    let vars = &ideal.vars;
    let ngens = ideal.generators.len();
    let mut basis: Vec<Elem> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for (idx, g) in ideal.generators.iter().enumerate() {
        let cof = track.then(|| {
            (0..ngens)
                .map(|j| if j == idx { MultiPoly::one(vars) } else { MultiPoly::zero(vars) })
                .collect()
        });
        let mut e = reduce_full(Elem { terms: to_terms(g, order), cof }, &basis, None, order);
        if e.terms.is_empty() {
            continue;
        }
        make_monic(&mut e);
        let k = basis.len();
        basis.push(e);
        for i in 0..k {
            pending.insert((i, k));
        }
    }

    let mut steps = 0usize;
    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lcm(&basis[a.0].lead().unwrap().0, &basis[a.1].lead().unwrap().0);
                let lb = lcm(&basis[b.0].lead().unwrap().0, &basis[b.1].lead().unwrap().0);
                order.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let li = &basis[i].lead().unwrap().0;
        let lj = &basis[j].lead().unwrap().0;
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].lead().unwrap().0, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > opts.max_reductions {
            return Err(Error::ResourceLimit { stage: "groebner", budget: opts.max_reductions });
        }
        let s = spoly(&basis[i], &basis[j], order);
        let mut r = reduce_full(s, &basis, None, order);
        if r.terms.is_empty() {
            continue;
        }
        make_monic(&mut r);
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pending.insert((i, k));
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by another
    let mut keep: Vec<usize> = Vec::new();
    'outer: for i in 0..basis.len() {
        let li = &basis[i].lead().unwrap().0;
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            let lj = &basis[j].lead().unwrap().0;
            if divides(lj, li) && (lj != li || j < i) {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    let minimal: Vec<Elem> = keep.into_iter().map(|i| basis[i].clone()).collect();
    let mut reduced: Vec<Elem> = Vec::with_capacity(minimal.len());
    for (i, e) in minimal.iter().enumerate() {
        let mut r = reduce_full(e.clone(), &minimal, Some(i), order);
        make_monic(&mut r);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));

    let generators: Vec<MultiPoly> = reduced.iter().map(|e| from_terms(vars, e.terms.clone())).collect();
    let rep = track.then(|| reduced.into_iter().map(|e| e.cof.unwrap()).collect());
    Ok((Ideal { vars: vars.clone(), generators, order }, rep))
}

fn divide(f: &MultiPoly, gens: &[MultiPoly], order: TermOrder) -> Division {
    let vars = f.vars();
    let gterms: Vec<Terms> = gens.iter().map(|g| to_terms(g, order)).collect();
    let mut quotients = vec![MultiPoly::zero(vars); gens.len()];
    let mut work = to_terms(f, order);
    let mut rem: Terms = Vec::new();
    while let Some((le, lc)) = work.last().cloned() {
        let hit = gterms
            .iter()
            .enumerate()
            .find(|(_, g)| g.last().map_or(false, |(ge, _)| divides(ge, &le)));
        match hit {
            Some((k, g)) => {
                let (ge, gc) = g.last().unwrap();
                let m: Vec<u32> = le.iter().zip(ge).map(|(a, b)| a - b).collect();
                let c = &lc / gc;
                work = sub_scaled(&work, &c, &m, g, order);
                quotients[k].add_term(m, c);
            }
            None => rem.push(work.pop().unwrap()),
        }
    }
    Division { remainder: from_terms(vars, rem), quotients }
}

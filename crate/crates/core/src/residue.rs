//! Chern monomials of matrices and Grothendieck residues: the Jacobian
//! formula at nondegenerate zeros, the transformation law at arbitrary
//! isolated rational zeros, and the per-component transversal-disc pipeline.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::foliation::{dehomogenize, dual_vector_field_2d, restrict_to_disc, AffinePoint, Coordinates, DiscSlice, Form1, FoliationSpec, VectorFieldGerm};
use crate::poly::{rationalize, vars_from, GroebnerOptions, Ideal, MultiPoly, PolyMatrix, QuotientDim, Rational, TermOrder};
use crate::singular::{isolated_points_2d, Center, Locus, SingularComponent, SingularPoint2D};
use crate::{Error, Result};

/// `φ = c_1^{α_1} ⋯ c_r^{α_r}` with `Σ i·α_i = r`, evaluated on `r × r` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernMonomial {
    exponents: Vec<u32>,
}

impl ChernMonomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        let size = exponents.len();
        let weight: u32 = exponents.iter().enumerate().map(|(i, a)| (i as u32 + 1) * a).sum();
        if size == 0 || weight as usize != size {
            return Err(Error::WeightMismatch { weight, size });
        }
        Ok(ChernMonomial { exponents })
    }

    pub fn c1_squared() -> Self {
        ChernMonomial { exponents: vec![2, 0] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Matrix size `k+1`.
    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    /// Involves the determinant class `c_{k+1}`.
    pub fn uses_top_class(&self) -> bool {
        self.exponents.last().map_or(false, |&a| a > 0)
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "c{}", i + 1)?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

/// Scalars a Chern monomial can be evaluated over.
pub trait ChernScalar: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl ChernScalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl ChernScalar for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.vars())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
}

impl ChernScalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * crate::poly::rat_to_f64(c)
    }
}

/// `[c_0, …, c_r]` with `det(I + tM) = Σ c_i t^i`, by Faddeev–LeVerrier.
pub fn chern_classes<T: ChernScalar>(m: &[Vec<T>]) -> Vec<T> {
    let n = m.len();
    let Some(sample) = m.first().and_then(|r| r.first()) else {
        return Vec::new();
    };
    let zero = sample.zero_like();
    let one = sample.one_like();
    let matmul = |a: &[Vec<T>], b: &[Vec<T>]| -> Vec<Vec<T>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(zero.clone(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                    .collect()
            })
            .collect()
    };
    // char poly det(λ - M) = Σ a_k λ^{n-k}; c_k = (-1)^k a_k
    let mut coeffs = vec![one.clone()];
    let mut mk: Vec<Vec<T>> = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        let mut next = matmul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].add(&coeffs[k - 1]);
        }
        mk = next;
        let amk = matmul(m, &mk);
        let tr = (0..n).fold(zero.clone(), |acc, i| acc.add(&amk[i][i]));
        coeffs.push(tr.scale(&-Rational::new(1.into(), (k as i64).into())));
    }
    coeffs
        .into_iter()
        .enumerate()
        .map(|(k, a)| if k % 2 == 1 { a.scale(&-Rational::one()) } else { a })
        .collect()
}

pub fn chern_eval<T: ChernScalar>(phi: &ChernMonomial, m: &[Vec<T>]) -> Result<T> {
    if m.len() != phi.size() || m.iter().any(|r| r.len() != m.len()) {
        let weight = phi.size() as u32;
        return Err(Error::WeightMismatch { weight, size: m.len() });
    }
    let c = chern_classes(m);
    let mut acc = c[0].clone();
    for (i, &a) in phi.exponents.iter().enumerate() {
        for _ in 0..a {
            acc = acc.mul(&c[i + 1]);
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    JacobianFormula,
    TransformationLaw,
    Martinelli,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::JacobianFormula => "jacobian-formula",
            Method::TransformationLaw => "transformation-law",
            Method::Martinelli => "martinelli-numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidueNumber {
    Exact(Rational),
    Numeric { value: Complex64, error: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueValue {
    pub value: ResidueNumber,
    pub method: Method,
    pub top_class: bool,
}

impl ResidueValue {
    pub fn exact(&self) -> Option<&Rational> {
        match &self.value {
            ResidueNumber::Exact(r) => Some(r),
            ResidueNumber::Numeric { .. } => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match &self.value {
            ResidueNumber::Exact(r) => Complex64::new(crate::poly::rat_to_f64(r), 0.0),
            ResidueNumber::Numeric { value, .. } => *value,
        }
    }
}

fn check_size(x: &VectorFieldGerm, phi: &ChernMonomial) -> Result<()> {
    if x.dim() != phi.size() {
        return Err(Error::WeightMismatch { weight: phi.size() as u32, size: x.dim() });
    }
    Ok(())
}

/// `φ(JX(p)) / det JX(p)` at a nondegenerate zero.
pub fn grothendieck_nondegenerate(x: &VectorFieldGerm, p: &AffinePoint, phi: &ChernMonomial) -> Result<ResidueValue> {
    check_size(x, phi)?;
    let jac = x.jacobian();
    let top_class = phi.uses_top_class();
    match &p.coords {
        Coordinates::Exact(q) => {
            if !x.vanishes_at(q) {
                return Err(Error::Invalid(format!("{p} is not a zero of {x}")));
            }
            let j = jac.eval(q);
            let det = crate::poly::rat_det(&j);
            if det.is_zero() {
                return Err(Error::DegeneratePoint);
            }
            let v = chern_eval(phi, &j)? / det;
            Ok(ResidueValue { value: ResidueNumber::Exact(v), method: Method::JacobianFormula, top_class })
        }
        Coordinates::Numeric { values, error } => {
            let eval_at = |pt: &[Complex64]| -> Result<Complex64> {
                let j: Vec<Vec<Complex64>> = (0..jac.nrows())
                    .map(|i| (0..jac.ncols()).map(|k| jac.get(i, k).eval_complex(pt)).collect())
                    .collect();
                let c = chern_classes(&j);
                let det = *c.last().unwrap();
                if det.norm() < 1e-12 {
                    return Err(Error::DegeneratePoint);
                }
                Ok(chern_eval(phi, &j)? / det)
            };
            let v = eval_at(values)?;
            // first-order propagation of the coordinate error
            let mut err = 0.0;
            for i in 0..values.len() {
                let mut q = values.clone();
                q[i] += Complex64::new(*error, 0.0);
                err += (eval_at(&q)? - v).norm();
            }
            Ok(ResidueValue {
                value: ResidueNumber::Numeric { value: v, error: 2.0 * err + 1e-14 * (1.0 + v.norm()) },
                method: Method::JacobianFormula,
                top_class,
            })
        }
    }
}

/// Residue of `h dz / (z_1^{m_1} ⋯ z_r^{m_r})`: the coefficient of `z^{m-1}`.
pub fn grothendieck_monomial(h: &MultiPoly, m: &[u32]) -> Rational {
    assert!(m.iter().all(|&a| a > 0), "monomial exponents must be positive");
    let e: Vec<u32> = m.iter().map(|a| a - 1).collect();
    h.coeff(&e)
}

/// Data of the local transformation law `u_j z_j^{m_j} = Σ_k a_{jk} X_k`
/// around the origin, with `u_j(0) ≠ 0`.
#[derive(Clone, Debug)]
pub struct TransformationLaw {
    pub exponents: Vec<u32>,
    pub units: Vec<MultiPoly>,
    pub matrix: PolyMatrix,
    pub residue: Rational,
}

/// Power-series inverse of `w` (with `w(0) ≠ 0`) modulo monomials outside the box `< bound`.
fn series_inverse(w: &MultiPoly, bound: &[u32]) -> MultiPoly {
    let w0 = w.constant_term();
    assert!(!w0.is_zero(), "series inverse needs a unit");
    let inv0 = Rational::one() / &w0;
    let vars = w.vars();
    // 1/w = inv0 Σ (-(w - w0) inv0)^k, nilpotent in the truncated ring
    let t = (w - &MultiPoly::constant(vars, w0.clone())).scale(&-inv0.clone()).truncate_box(bound);
    let mut acc = MultiPoly::one(vars);
    let mut power = MultiPoly::one(vars);
    let max_deg: u32 = bound.iter().map(|b| b.saturating_sub(1)).sum();
    for _ in 0..max_deg {
        power = (&power * &t).truncate_box(bound);
        if power.is_zero() {
            break;
        }
        acc += &power;
    }
    acc.scale(&inv0)
}

/// Element of `I : z_j^∞` that does not vanish at the origin.
fn saturation_unit(gens: &[MultiPoly], j: usize, opts: &GroebnerOptions) -> Result<MultiPoly> {
    let v = gens[0].vars().clone();
    let mut names = vec!["_t".to_string()];
    names.extend(v.iter().cloned());
    let ev = vars_from(names);
    let mut g: Vec<MultiPoly> = gens.iter().map(|p| p.embed(&ev)).collect::<Result<_>>()?;
    let mut e = vec![0u32; ev.len()];
    e[0] = 1;
    e[j + 1] = 1;
    g.push(&MultiPoly::monomial(&ev, e, Rational::one()) - &MultiPoly::one(&ev));
    let gb = Ideal::new(&ev, g, TermOrder::Lex)?.groebner(opts)?;
    let mut candidates: Vec<MultiPoly> = gb
        .generators()
        .iter()
        .filter(|p| p.degree_in(0).unwrap_or(0) == 0 && !p.constant_term().is_zero())
        .map(|p| p.embed(&v))
        .collect::<Result<_>>()?;
    candidates.sort_by_key(|p| (p.nterms(), p.total_degree()));
    candidates
        .into_iter()
        .next()
        .ok_or_else(|| Error::NonIsolated("origin is not an isolated zero".into()))
}

/// Builds the transformation law at the origin for `X(z + p)` and evaluates
/// the residue.
pub fn transformation_law(x: &VectorFieldGerm, p: &[Rational], phi: &ChernMonomial, opts: &GroebnerOptions) -> Result<TransformationLaw> {
    check_size(x, phi)?;
    if !x.vanishes_at(p) {
        return Err(Error::Invalid(format!("point is not a zero of {x}")));
    }
    let y = x.translate(p);
    let v = y.vars().clone();
    let n = y.dim();
    let ideal = Ideal::new(&v, y.components().to_vec(), TermOrder::GrevLex)?;
    let budget = match ideal.quotient_dimension(opts)? {
        QuotientDim::Finite(d) => d + 1,
        QuotientDim::Infinite => return Err(Error::NonIsolated(format!("{x} has a curve of zeros"))),
    };
    let gb = ideal.groebner_with_cofactors(opts)?;
    let mut exponents = Vec::with_capacity(n);
    let mut units = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let zj = MultiPoly::var(&v, j);
        let mut found = None;
        'search: for pass in 0..2 {
            let u = if pass == 0 { MultiPoly::one(&v) } else { saturation_unit(y.components(), j, opts)? };
            let mut f = u.clone();
            for m in 1..=budget as u32 {
                f = &f * &zj;
                if let Some(cof) = gb.lift(&f)? {
                    found = Some((m, u, cof));
                    break 'search;
                }
            }
        }
        let (m, u, cof) = found.ok_or(Error::ResourceLimit { stage: "transformation law", budget })?;
        let mut check = MultiPoly::zero(&v);
        for (a, g) in cof.iter().zip(y.components()) {
            check += &(a * g);
        }
        if check != &u * &zj.pow(m) {
            return Err(Error::Invalid("cofactor identity failed".into()));
        }
        exponents.push(m);
        units.push(u);
        rows.push(cof);
    }
    let matrix = PolyMatrix::from_rows(&v, rows)?;
    let h = chern_eval(phi, &y.jacobian().rows())?;
    let w = units.iter().fold(MultiPoly::one(&v), |acc, u| &acc * u);
    let inv = series_inverse(&w, &exponents);
    let integrand = (&(&h * &matrix.det()?).truncate_box(&exponents) * &inv).truncate_box(&exponents);
    let residue = grothendieck_monomial(&integrand, &exponents);
    Ok(TransformationLaw { exponents, units, matrix, residue })
}

pub fn grothendieck_transformation(x: &VectorFieldGerm, p: &[Rational], phi: &ChernMonomial, opts: &GroebnerOptions) -> Result<ResidueValue> {
    let law = transformation_law(x, p, phi, opts)?;
    Ok(ResidueValue { value: ResidueNumber::Exact(law.residue), method: Method::TransformationLaw, top_class: phi.uses_top_class() })
}

/// Residue of a component with everything that went into it.
#[derive(Clone, Debug)]
pub struct ComponentResidue {
    pub restricted_form: Form1,
    pub field: VectorFieldGerm,
    /// Singular points of the restricted field at the disc center (several
    /// conjugate points for an irrational cluster).
    pub center_points: Vec<SingularPoint2D>,
    pub all_points: Vec<SingularPoint2D>,
    pub value: ResidueValue,
    /// Agreement of a second exact method, when one applies.
    pub cross_check: Option<Rational>,
    /// Per-point numeric values of an irrational cluster.
    pub cluster_values: Vec<Complex64>,
}

/// Tolerance for rationalizing the residue of an irrational cluster.
pub const RATIONALIZE_TOL: f64 = 1e-9;

/// Restricts `f` to `slice`, forms the dual field and evaluates its residue at
/// the point where `z` meets the disc.
pub fn residue_for_component(
    f: &FoliationSpec,
    z: &SingularComponent,
    center: &Center,
    slice: &DiscSlice,
    phi: &ChernMonomial,
    opts: &GroebnerOptions,
) -> Result<ComponentResidue> {
    if slice.free().len() != 2 {
        return Err(Error::Unsupported("only 2-dimensional discs are supported".into()));
    }
    let affine = dehomogenize(f, slice.chart())?;
    let restricted = restrict_to_disc(&affine, slice)?;
    let field = dual_vector_field_2d(&restricted)?;
    let all_points = isolated_points_2d(&field, opts)?;
    let top_class = phi.uses_top_class();

    let exact_center = match center {
        Center::OnDisc => None,
        c => Some(z.center_point(c)?),
    };
    if let Some(p) = exact_center {
        let q = slice
            .project_point(&p)
            .ok_or_else(|| Error::Genericity("center on disc".into()))?;
        if !field.vanishes_at(&q) {
            return Err(Error::ComponentMissed(format!(
                "{} is not a zero of the restricted field {field}",
                AffinePoint::exact(&slice.free_vars(), q)
            )));
        }
        let pt = all_points
            .iter()
            .find(|s| s.point.as_exact() == Some(&q[..]))
            .cloned()
            .ok_or_else(|| Error::ComponentMissed(format!("center of {} not found among the zeros", z.name)))?;
        let law = transformation_law(&field, &q, phi, opts)?;
        let (value, cross_check) = if pt.nondegenerate {
            let v = grothendieck_nondegenerate(&field, &pt.point, phi)?;
            (v, Some(law.residue))
        } else {
            (ResidueValue { value: ResidueNumber::Exact(law.residue), method: Method::TransformationLaw, top_class }, None)
        };
        return Ok(ComponentResidue {
            restricted_form: restricted,
            field,
            center_points: vec![pt],
            all_points,
            value,
            cross_check,
            cluster_values: Vec::new(),
        });
    }

    let cluster: Vec<SingularPoint2D> = all_points.iter().filter(|s| on_component(z, slice, s)).cloned().collect();
    if cluster.is_empty() {
        return Err(Error::ComponentMissed(format!("{} does not meet the disc at a zero of {field}", z.name)));
    }
    if let Some(pt) = cluster.iter().find(|s| s.point.is_exact()) {
        let q = pt.point.as_exact().unwrap().to_vec();
        return residue_for_component(f, z, &Center::Point(slice.lift_point(&q)), slice, phi, opts);
    }
    let values: Vec<Complex64> = cluster
        .iter()
        .map(|s| grothendieck_nondegenerate(&field, &s.point, phi).map(|r| r.to_complex()))
        .collect::<Result<_>>()?;
    let mean = values.iter().sum::<Complex64>() / values.len() as f64;
    if values.iter().any(|v| (v - mean).norm() > RATIONALIZE_TOL * (1.0 + mean.norm())) || mean.im.abs() > RATIONALIZE_TOL {
        return Err(Error::NoConvergence(format!("conjugate residues of {} disagree", z.name)));
    }
    let r = rationalize(mean.re, RATIONALIZE_TOL)
        .ok_or_else(|| Error::NoConvergence(format!("residue {} of {} is not rational", mean.re, z.name)))?;
    Ok(ComponentResidue {
        restricted_form: restricted,
        field,
        center_points: cluster,
        all_points,
        value: ResidueValue { value: ResidueNumber::Exact(r), method: Method::JacobianFormula, top_class },
        cross_check: None,
        cluster_values: values,
    })
}

/// Whether a zero of the restricted field lies on `z`; numeric points are
/// tested within a multiple of their certified error.
pub fn on_component(z: &SingularComponent, slice: &DiscSlice, s: &SingularPoint2D) -> bool {
    match &s.point.coords {
        Coordinates::Exact(q) => z.contains_affine(&slice.lift_point(q)),
        Coordinates::Numeric { values, error } => {
            let full = lift_complex(slice, values);
            complex_on_component(z, &full, *error)
        }
    }
}

fn lift_complex(slice: &DiscSlice, free: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); slice.chart().ambient_dim()];
    for (i, v) in slice.fixed() {
        out[*i] = Complex64::new(crate::poly::rat_to_f64(v), 0.0);
    }
    for (&i, v) in slice.free().iter().zip(free) {
        out[i] = *v;
    }
    out
}

fn complex_on_component(z: &SingularComponent, p: &[Complex64], error: f64) -> bool {
    let tol = 1e3 * error.max(1e-12) * (1.0 + p.iter().map(|c| c.norm()).sum::<f64>());
    match &z.locus {
        Locus::Equations(eqs) => eqs.iter().all(|e| e.eval_complex(p).norm() < tol),
        Locus::Parametrized { map, .. } => {
            // candidate parameters are roots of p_i(s) = p[i] for a nonconstant p_i
            map.iter().zip(p).any(|(c, target)| {
                if c.total_degree().unwrap_or(0) == 0 {
                    return false;
                }
                let mut coeffs: Vec<Complex64> = c
                    .to_univariate(0)
                    .unwrap()
                    .iter()
                    .map(|r| Complex64::new(crate::poly::rat_to_f64(r), 0.0))
                    .collect();
                coeffs[0] -= target;
                let roots = complex_roots_f64(&coeffs);
                roots.iter().any(|s| map.iter().zip(p).all(|(m, v)| (m.eval_complex(&[*s]) - v).norm() < tol))
            })
        }
    }
}

/// Roots of a complex polynomial by companion-free Durand–Kerner.
fn complex_roots_f64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

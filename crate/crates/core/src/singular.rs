//! Singular ideals, declared singular components and their verification,
//! isolated zeros of plane vector fields, and genericity of disc choices.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::foliation::{AffinePoint, Chart, DiscSlice, Form1, VectorFieldGerm};
use crate::poly::{
    complex_roots, rat_det, rat_rank, rat_to_f64, rational_roots, vars_from, GroebnerOptions, Ideal,
    MultiPoly, QuotientDim, Rational, TermOrder, UniPoly, Vars,
};
use crate::{Error, Result};

/// Acceptance threshold for Newton-certified numeric zeros.
pub const CERTIFICATION_TOL: f64 = 1e-12;

/// Ideal generated by the coefficients of the form.
pub fn singular_ideal(form: &Form1) -> Result<Ideal> {
    Ideal::new(form.vars(), form.coefficients().to_vec(), TermOrder::GrevLex)
}

/// True when the singular ideal is the unit ideal, i.e. the foliation is
/// regular in this chart.
pub fn has_empty_singular_set(ideal: &Ideal, opts: &GroebnerOptions) -> Result<bool> {
    ideal.is_unit(opts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// Rational curve `s ↦ (p_1(s), …, p_n(s))` in chart coordinates.
    Parametrized { parameter: Vars, map: Vec<MultiPoly> },
    /// Zero set of polynomials in chart coordinates.
    Equations(Vec<MultiPoly>),
}

/// Declared irreducible component of the singular set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularComponent {
    pub name: String,
    pub degree: u32,
    pub chart: Chart,
    pub locus: Locus,
}

impl SingularComponent {
    pub fn parametrized(name: &str, degree: u32, chart: Chart, parameter: &str, map: Vec<MultiPoly>) -> Result<Self> {
        let pv = vars_from(vec![parameter.to_string()]);
        if map.len() != chart.ambient_dim() {
            return Err(Error::Invalid(format!(
                "parametrization of {name} needs {} coordinates",
                chart.ambient_dim()
            )));
        }
        let map = map.iter().map(|p| p.embed(&pv)).collect::<Result<_>>()?;
        Ok(SingularComponent { name: name.to_string(), degree, chart, locus: Locus::Parametrized { parameter: pv, map } })
    }

    pub fn equations(name: &str, degree: u32, chart: Chart, eqs: Vec<MultiPoly>) -> Result<Self> {
        let eqs = eqs.iter().map(|p| p.embed(chart.vars())).collect::<Result<_>>()?;
        Ok(SingularComponent { name: name.to_string(), degree, chart, locus: Locus::Equations(eqs) })
    }

    /// Chart point at parameter `s`.
    pub fn point_at(&self, s: &Rational) -> Option<Vec<Rational>> {
        match &self.locus {
            Locus::Parametrized { map, .. } => Some(map.iter().map(|p| p.eval(std::slice::from_ref(s))).collect()),
            Locus::Equations(_) => None,
        }
    }

    /// Largest degree among the parametrizing polynomials.
    pub fn parametrization_degree(&self) -> Option<u32> {
        match &self.locus {
            Locus::Parametrized { map, .. } => Some(map.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0)),
            Locus::Equations(_) => None,
        }
    }

    pub fn contains_affine(&self, q: &[Rational]) -> bool {
        match &self.locus {
            Locus::Parametrized { parameter, map } => {
                let mut g: Option<UniPoly> = None;
                for (p, c) in map.iter().zip(q) {
                    let d = p - &MultiPoly::constant(parameter, c.clone());
                    let u = UniPoly::new(d.to_univariate(0).expect("univariate"));
                    g = Some(match g {
                        None => u,
                        Some(acc) => acc.gcd(&u),
                    });
                }
                match g {
                    None => true,
                    Some(g) => g.is_zero() || g.degree().map_or(false, |d| d > 0),
                }
            }
            Locus::Equations(eqs) => eqs.iter().all(|e| e.eval(q).is_zero()),
        }
    }

    /// Membership of a point of `P^n` in the projective closure.
    pub fn contains_homogeneous(&self, point: &[Rational]) -> bool {
        if let Some(q) = self.chart.from_homogeneous(point) {
            return self.contains_affine(&q);
        }
        let hv = self.chart.homogeneous_vars();
        match &self.locus {
            Locus::Parametrized { map, .. } => {
                let d = self.parametrization_degree().unwrap_or(0);
                if d == 0 {
                    return false;
                }
                let mut inf = vec![Rational::zero(); hv.len()];
                for (j, p) in map.iter().enumerate() {
                    inf[self.chart.homogeneous_index(j)] = p.coeff(&[d]);
                }
                rat_rank(&vec![inf, point.to_vec()]) == 1
            }
            Locus::Equations(eqs) => eqs.iter().all(|e| {
                let d = e.total_degree().unwrap_or(0);
                self.chart.homogenize_poly(e, d).expect("degree bound").eval(point).is_zero()
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerification {
    pub passed: bool,
    /// Index of the first generator that does not vanish and its residual.
    pub witness: Option<(usize, MultiPoly)>,
    /// Declared degree equals the parametrization degree; `None` for
    /// equation-defined components.
    pub degree_consistent: Option<bool>,
}

/// Checks that every generator of `ideal` vanishes on `z`. Parametrized
/// components are checked by substitution, equation components by ideal
/// membership.
pub fn verify_component(z: &SingularComponent, ideal: &Ideal, opts: &GroebnerOptions) -> Result<ComponentVerification> {
    if ideal.vars() != z.chart.vars() {
        return Err(Error::VariableMismatch(format!("ideal and component {} use different charts", z.name)));
    }
    let mut witness = None;
    match &z.locus {
        Locus::Parametrized { map, .. } => {
            for (i, g) in ideal.generators().iter().enumerate() {
                let r = g.compose(map);
                if !r.is_zero() {
                    witness = Some((i, r));
                    break;
                }
            }
        }
        Locus::Equations(eqs) => {
            let gb = Ideal::new(z.chart.vars(), eqs.clone(), TermOrder::GrevLex)?.groebner(opts)?;
            for (i, g) in ideal.generators().iter().enumerate() {
                let r = gb.normal_form(g).remainder;
                if !r.is_zero() {
                    witness = Some((i, r));
                    break;
                }
            }
        }
    }
    let degree_consistent = z.parametrization_degree().map(|d| d == z.degree);
    Ok(ComponentVerification { passed: witness.is_none(), witness, degree_consistent })
}

/// Common zero of a plane field with its local data.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint2D {
    pub point: AffinePoint,
    pub multiplicity: usize,
    pub nondegenerate: bool,
    /// Rational-root-free factors of the two eliminants, for numeric points.
    pub factors: Option<[UniPoly; 2]>,
}

fn eliminant(x: &VectorFieldGerm, keep: usize, opts: &GroebnerOptions) -> Result<UniPoly> {
    let v = x.vars();
    let other = 1 - keep;
    let perm = vars_from(vec![v[other].clone(), v[keep].clone()]);
    let g = Ideal::new(&perm, x.components().to_vec(), TermOrder::Lex)?.groebner(opts)?;
    let e = g
        .generators()
        .iter()
        .find(|p| p.degree_in(0).unwrap_or(0) == 0)
        .ok_or_else(|| Error::NonIsolated(format!("{x} has no eliminant")))?;
    Ok(UniPoly::new(e.to_univariate(1)?).squarefree())
}

/// Dimension of the local algebra of `(X_1, X_2)` at `p`.
pub fn local_multiplicity(x: &VectorFieldGerm, p: &[Rational], opts: &GroebnerOptions) -> Result<usize> {
    let y = x.translate(p);
    let v = y.vars().clone();
    let n = v.len();
    let dim_with_power = |k: u32| -> Result<usize> {
        let mut gens = y.components().to_vec();
        gens.extend(monomials_of_degree(n, k).into_iter().map(|e| MultiPoly::monomial(&v, e, Rational::one())));
        match Ideal::new(&v, gens, TermOrder::GrevLex)?.quotient_dimension(opts)? {
            QuotientDim::Finite(d) => Ok(d),
            QuotientDim::Infinite => unreachable!("m^k is zero-dimensional"),
        }
    };
    let mut prev = dim_with_power(1)?;
    if prev == 0 {
        return Ok(0);
    }
    let mut k = 2;
    loop {
        let d = dim_with_power(k)?;
        if d == prev {
            return Ok(d);
        }
        prev = d;
        k += 1;
        if k as usize > 4 * opts.max_reductions.max(1) {
            return Err(Error::ResourceLimit { stage: "local multiplicity", budget: opts.max_reductions });
        }
    }
}

pub(crate) fn monomials_of_degree(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for mut rest in monomials_of_degree(n - 1, k - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// All common zeros of a two-variable field. Rational zeros are exact;
/// others are Newton-certified numeric points.
pub fn isolated_points_2d(x: &VectorFieldGerm, opts: &GroebnerOptions) -> Result<Vec<SingularPoint2D>> {
    if x.dim() != 2 {
        return Err(Error::Invalid("isolated_points_2d needs a field in two variables".into()));
    }
    let v = x.vars().clone();
    let ideal = Ideal::new(&v, x.components().to_vec(), TermOrder::GrevLex)?;
    let total = match ideal.quotient_dimension(opts)? {
        QuotientDim::Infinite => return Err(Error::NonIsolated(format!("{x} has a curve of zeros"))),
        QuotientDim::Finite(0) => return Ok(Vec::new()),
        QuotientDim::Finite(d) => d,
    };
    let ea = eliminant(x, 0, opts)?;
    let eb = eliminant(x, 1, opts)?;
    let ra = rational_roots(&ea);
    let rb = rational_roots(&eb);
    let jac = x.jacobian();

    let mut exact: Vec<Vec<Rational>> = Vec::new();
    for (a, _) in &ra.roots {
        for (b, _) in &rb.roots {
            let p = vec![a.clone(), b.clone()];
            if x.vanishes_at(&p) {
                exact.push(p);
            }
        }
    }
    exact.sort_by(|p, q| q.cmp(p));
    let mut out = Vec::new();
    for p in exact {
        let nondegenerate = !rat_det(&jac.eval(&p)).is_zero();
        let multiplicity = if nondegenerate { 1 } else { local_multiplicity(x, &p, opts)? };
        out.push(SingularPoint2D { point: AffinePoint::exact(&v, p), multiplicity, nondegenerate, factors: None });
    }

    let irrational = ra.residual.degree().unwrap_or(0) > 0 || rb.residual.degree().unwrap_or(0) > 0;
    if irrational {
        let ca = complex_roots(&ea);
        let cb = complex_roots(&eb);
        let rat_a: Vec<Complex64> = ra.roots.iter().map(|(r, _)| Complex64::new(rat_to_f64(r), 0.0)).collect();
        let rat_b: Vec<Complex64> = rb.roots.iter().map(|(r, _)| Complex64::new(rat_to_f64(r), 0.0)).collect();
        let near_rational = |z: Complex64, set: &[Complex64]| set.iter().any(|r| (z - r).norm() < 1e-9);
        let mut found: Vec<(Vec<Complex64>, f64)> = Vec::new();
        for &a in &ca {
            for &b in &cb {
                if near_rational(a, &rat_a) && near_rational(b, &rat_b) {
                    continue;
                }
                let scale = 1.0 + a.norm() + b.norm();
                let val = x.eval_complex(&[a, b]);
                if val.iter().map(|c| c.norm()).fold(0.0, f64::max) > 1e-6 * scale.powi(4) {
                    continue;
                }
                if let Some((p, err)) = newton_certify(x, [a, b]) {
                    if !found.iter().any(|(q, _)| dist(q, &p) < 1e-8) {
                        found.push((p, err));
                    }
                }
            }
        }
        found.sort_by(|(p, _), (q, _)| {
            (p[0].re, p[0].im, p[1].re, p[1].im).partial_cmp(&(q[0].re, q[0].im, q[1].re, q[1].im)).unwrap()
        });
        for (p, err) in found {
            let j: Vec<Vec<Complex64>> = (0..2)
                .map(|i| (0..2).map(|k| jac.get(i, k).eval_complex(&p)).collect())
                .collect();
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.norm() < 1e-8 {
                return Err(Error::Unsupported(format!("degenerate irrational zero of {x}")));
            }
            out.push(SingularPoint2D {
                point: AffinePoint::numeric(&v, p, err),
                multiplicity: 1,
                nondegenerate: true,
                factors: Some([ra.residual.clone(), rb.residual.clone()]),
            });
        }
    }
    let count: usize = out.iter().map(|p| p.multiplicity).sum();
    if count > total {
        return Err(Error::Invalid(format!("found {count} zeros counted with multiplicity, more than {total}")));
    }
    Ok(out)
}

fn dist(p: &[Complex64], q: &[Complex64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Newton iteration from a seed; accepts when the steps contract below
/// [`CERTIFICATION_TOL`]. Returns the point and an error bound.
fn newton_certify(x: &VectorFieldGerm, seed: [Complex64; 2]) -> Option<(Vec<Complex64>, f64)> {
    let jac = x.jacobian();
    let mut p = seed.to_vec();
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let f = x.eval_complex(&p);
        let j: Vec<Vec<Complex64>> = (0..2).map(|i| (0..2).map(|k| jac.get(i, k).eval_complex(&p)).collect()).collect();
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() == 0.0 {
            return None;
        }
        let d0 = (j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let d1 = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
        p[0] -= d0;
        p[1] -= d1;
        let step = d0.norm().max(d1.norm());
        let scale = 1.0 + p[0].norm() + p[1].norm();
        if step <= CERTIFICATION_TOL * scale {
            return Some((p, (2.0 * step).max(f64::EPSILON * scale)));
        }
        if step > last && last < 1e-3 {
            return None;
        }
        last = step;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name, passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub checks: Vec<Check>,
}

impl GenericityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Genericity(self.failures().join(", ")))
        }
    }
}

impl fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: {}", c.name, if c.passed { "ok" } else { &c.detail })?;
        }
        Ok(())
    }
}

/// Where on the component the disc is centered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Parameter(Rational),
    Point(Vec<Rational>),
    /// Wherever the component meets the disc; may be an irrational cluster.
    OnDisc,
}

impl SingularComponent {
    /// Chart coordinates of the center, checked to lie on the component.
    pub fn center_point(&self, center: &Center) -> Result<Vec<Rational>> {
        let p = match center {
            Center::Parameter(s) => self
                .point_at(s)
                .ok_or_else(|| Error::Invalid(format!("component {} is not parametrized", self.name)))?,
            Center::Point(p) => {
                if p.len() != self.chart.ambient_dim() {
                    return Err(Error::Invalid(format!("center of {} has the wrong dimension", self.name)));
                }
                p.clone()
            }
            Center::OnDisc => {
                return Err(Error::Unsupported(format!("center of {} is not given exactly", self.name)))
            }
        };
        if !self.contains_affine(&p) {
            return Err(Error::Invalid(format!("center is not on component {}", self.name)));
        }
        Ok(p)
    }

    fn tangent_data(&self, center: &Center, p: &[Rational]) -> Result<TangentData> {
        match &self.locus {
            Locus::Parametrized { map, .. } => {
                let s = match center {
                    Center::Parameter(s) => s.clone(),
                    Center::Point(_) | Center::OnDisc => {
                        return Err(Error::Unsupported(format!(
                            "center of parametrized component {} must be a parameter value",
                            self.name
                        )))
                    }
                };
                let t: Vec<Rational> = map.iter().map(|c| c.derivative(0).eval(std::slice::from_ref(&s))).collect();
                Ok(TangentData::Tangent(t))
            }
            Locus::Equations(eqs) => {
                let n = self.chart.ambient_dim();
                let j: Vec<Vec<Rational>> =
                    eqs.iter().map(|e| (0..n).map(|i| e.derivative(i).eval(p)).collect()).collect();
                Ok(TangentData::Normals(j))
            }
        }
    }
}

enum TangentData {
    Tangent(Vec<Rational>),
    Normals(Vec<Vec<Rational>>),
}

/// Immersivity at the center, disjointness from the other components and
/// transversality of the disc.
pub fn check_genericity(
    z: &SingularComponent,
    center: &Center,
    slice: &DiscSlice,
    others: &[&SingularComponent],
) -> Result<GenericityReport> {
    if slice.chart() != &z.chart {
        return Err(Error::Invalid(format!("disc of {} must use the component's chart", z.name)));
    }
    let p = z.center_point(center)?;
    let n = z.chart.ambient_dim();
    let k = slice.free().len() - 1;
    let mut checks = Vec::new();

    let on_disc = slice.project_point(&p).is_some();
    checks.push(Check::new("center on disc", on_disc, "fixed coordinates of the disc differ from the center"));

    let td = z.tangent_data(center, &p)?;
    let immersive = match &td {
        TangentData::Tangent(t) => t.iter().any(|c| !c.is_zero()),
        TangentData::Normals(j) => rat_rank(j) == k + 1,
    };
    checks.push(Check::new("immersive", immersive, "component is singular or not immersed at the center"));

    let hp = z.chart.to_homogeneous(&p);
    let hits: Vec<&str> = others.iter().filter(|o| o.contains_homogeneous(&hp)).map(|o| o.name.as_str()).collect();
    checks.push(Check::new("disjoint", hits.is_empty(), format!("center also lies on {}", hits.join(", "))));

    let transversal = match &td {
        TangentData::Tangent(t) => {
            let mut rows = vec![t.clone()];
            for &i in slice.free() {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                rows.push(e);
            }
            rat_rank(&rows) == n
        }
        TangentData::Normals(j) => {
            let restricted: Vec<Vec<Rational>> =
                j.iter().map(|row| slice.free().iter().map(|&i| row[i].clone()).collect()).collect();
            rat_rank(&restricted) == k + 1
        }
    };
    checks.push(Check::new("transversal", transversal, "disc is not transversal to the component"));
    Ok(GenericityReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, vars};

    fn polys(texts: &[&str], v: &Vars) -> Vec<MultiPoly> {
        texts.iter().map(|t| parse_poly(t, v).unwrap()).collect()
    }

    fn chart_t() -> Chart {
        Chart::by_name(&vars(&["X", "Y", "Z", "T"]), "T", None).unwrap()
    }

    fn field(texts: &[&str], names: &[&str]) -> VectorFieldGerm {
        let v = vars(names);
        VectorFieldGerm::new(&v, polys(texts, &v)).unwrap()
    }

    fn param(name: &str, deg: u32, texts: &[&str], p: &str) -> SingularComponent {
        let pv = vars(&[p]);
        SingularComponent::parametrized(name, deg, chart_t(), p, polys(texts, &pv)).unwrap()
    }

    #[test]
    fn singular_ideals() {
        let v = vars(&["x", "y", "z"]);
        let w = Form1::new(&v, polys(&["yz", "xz", "xy"], &v)).unwrap();
        let i = singular_ideal(&w).unwrap();
        assert_eq!(i.generators(), polys(&["yz", "xz", "xy"], &v).as_slice());
        let opts = GroebnerOptions::default();
        assert!(!has_empty_singular_set(&i, &opts).unwrap());
        let dx = Form1::new(&v, polys(&["1", "0", "0"], &v)).unwrap();
        assert!(has_empty_singular_set(&singular_ideal(&dx).unwrap(), &opts).unwrap());
    }

    #[test]
    fn verification_and_witness() {
        let v = vars(&["x", "y", "z"]);
        let i = Ideal::new(&v, polys(&["yz", "xz", "xy"], &v), TermOrder::GrevLex).unwrap();
        let opts = GroebnerOptions::default();
        let z1 = param("Z1", 1, &["0", "0", "s"], "s");
        let r = verify_component(&z1, &i, &opts).unwrap();
        assert!(r.passed);
        assert_eq!(r.degree_consistent, Some(true));
        let diag = param("diag", 1, &["x", "x", "0"], "x");
        let r = verify_component(&diag, &i, &opts).unwrap();
        assert!(!r.passed);
        let (idx, w) = r.witness.unwrap();
        assert_eq!(idx, 2);
        assert_eq!(w.to_string(), "x^2");
        let eq = SingularComponent::equations("Z1", 1, chart_t(), polys(&["x", "y"], &v)).unwrap();
        assert!(verify_component(&eq, &i, &opts).unwrap().passed);
        let eq = SingularComponent::equations("bad", 1, chart_t(), polys(&["x - y", "z"], &v)).unwrap();
        assert!(!verify_component(&eq, &i, &opts).unwrap().passed);
    }

    #[test]
    fn plane_field_points() {
        let opts = GroebnerOptions::default();
        let x = field(&["2x^2 - x - z", "-2z + 3xz"], &["x", "z"]);
        let pts = isolated_points_2d(&x, &opts).unwrap();
        let coords: Vec<Vec<Rational>> = pts.iter().map(|p| p.point.as_exact().unwrap().to_vec()).collect();
        assert_eq!(coords, vec![vec![rat(2, 3), rat(2, 9)], vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]]);
        assert!(pts.iter().all(|p| p.multiplicity == 1 && p.nondegenerate));

        let pts = isolated_points_2d(&field(&["x", "-y"], &["x", "y"]), &opts).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].nondegenerate);
        assert_eq!(pts[0].multiplicity, 1);

        let pts = isolated_points_2d(&field(&["x^2", "y"], &["x", "y"]), &opts).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(!pts[0].nondegenerate);
        assert_eq!(pts[0].multiplicity, 2);
    }

    #[test]
    fn irrational_points_are_numeric() {
        let opts = GroebnerOptions::default();
        let pts = isolated_points_2d(&field(&["x^2 - 2", "y - x"], &["x", "y"]), &opts).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            let c = p.point.to_complex();
            assert!((c[0].norm() - 2f64.sqrt()).abs() < 1e-12);
            assert!((c[0] - c[1]).norm() < 1e-12);
            assert!(p.factors.is_some());
        }
    }

    #[test]
    fn curves_of_zeros_are_rejected() {
        let opts = GroebnerOptions::default();
        assert!(matches!(
            isolated_points_2d(&field(&["x y", "x"], &["x", "y"]), &opts),
            Err(Error::NonIsolated(_))
        ));
    }

    #[test]
    fn multiplicities_are_local() {
        let opts = GroebnerOptions::default();
        let x = field(&["x^2 (x - 1)", "y"], &["x", "y"]);
        assert_eq!(local_multiplicity(&x, &[rat(0, 1), rat(0, 1)], &opts).unwrap(), 2);
        assert_eq!(local_multiplicity(&x, &[rat(1, 1), rat(0, 1)], &opts).unwrap(), 1);
        assert_eq!(local_multiplicity(&x, &[rat(2, 1), rat(0, 1)], &opts).unwrap(), 0);
    }

    #[test]
    fn genericity_of_discs() {
        let chart = chart_t();
        let z1 = param("Z1", 1, &["0", "0", "s"], "s");
        let z2 = param("Z2", 1, &["0", "s", "0"], "s");
        let z3 = param("Z3", 1, &["s", "0", "0"], "s");
        let one = Center::Parameter(rat(1, 1));
        let d1 = DiscSlice::named(chart.clone(), &[("z", rat(1, 1))], &["x", "y"]).unwrap();
        let r = check_genericity(&z1, &one, &d1, &[&z2, &z3]).unwrap();
        assert!(r.passed(), "{r}");
        let bad = DiscSlice::named(chart.clone(), &[("x", rat(0, 1))], &["y", "z"]).unwrap();
        let r = check_genericity(&z1, &one, &bad, &[&z2, &z3]).unwrap();
        assert_eq!(r.failures(), vec!["transversal"]);
        let r = check_genericity(&z1, &Center::Parameter(rat(0, 1)), &DiscSlice::named(chart, &[("z", rat(0, 1))], &["x", "y"]).unwrap(), &[&z2, &z3])
            .unwrap();
        assert!(r.failures().contains(&"disjoint"));
    }
}

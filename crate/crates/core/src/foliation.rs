//! Foliations on `P^n` given by twisted 1-forms, their affine charts,
//! restriction to coordinate discs and dual vector fields.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::chern::CohomologyClass;
use crate::poly::{jacobian, vars_from, MultiPoly, PolyMatrix, Rational, Vars};
use crate::{Error, Result};

/// Affine chart `{X_c = 1}` of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    homogeneous: Vars,
    index: usize,
    affine: Vars,
}

impl Chart {
    /// Affine names default to the lowercased homogeneous names, skipping the
    /// chart coordinate.
    pub fn new(homogeneous: &Vars, index: usize, affine: Option<Vec<String>>) -> Result<Self> {
        let n1 = homogeneous.len();
        if n1 < 3 {
            return Err(Error::Invalid("projective space must have dimension at least 2".into()));
        }
        if index >= n1 {
            return Err(Error::Invalid(format!("chart index {index} out of range")));
        }
        let affine = match affine {
            Some(names) => names,
            None => homogeneous
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, s)| s.to_lowercase())
                .collect(),
        };
        if affine.len() != n1 - 1 {
            return Err(Error::Invalid(format!("chart needs {} affine variables", n1 - 1)));
        }
        Ok(Chart { homogeneous: homogeneous.clone(), index, affine: vars_from(affine) })
    }

    pub fn by_name(homogeneous: &Vars, name: &str, affine: Option<Vec<String>>) -> Result<Self> {
        let index = homogeneous
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), offset: 0 })?;
        Chart::new(homogeneous, index, affine)
    }

    pub fn ambient_dim(&self) -> usize {
        self.affine.len()
    }

    /// Homogeneous coordinate set to 1.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.homogeneous[self.index]
    }

    pub fn homogeneous_vars(&self) -> &Vars {
        &self.homogeneous
    }

    pub fn vars(&self) -> &Vars {
        &self.affine
    }

    /// Homogeneous index of affine coordinate `j`.
    pub fn homogeneous_index(&self, j: usize) -> usize {
        if j < self.index {
            j
        } else {
            j + 1
        }
    }

    /// Affine index of homogeneous coordinate `i`, `None` for the chart
    /// coordinate itself.
    pub fn affine_index(&self, i: usize) -> Option<usize> {
        match i.cmp(&self.index) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        }
    }

    /// `[x_0 : … : 1 : … : x_{n-1}]`.
    pub fn to_homogeneous(&self, point: &[Rational]) -> Vec<Rational> {
        let mut out = point.to_vec();
        out.insert(self.index, Rational::one());
        out
    }

    /// Affine coordinates of a homogeneous point, `None` when it lies on the
    /// hyperplane at infinity of this chart.
    pub fn from_homogeneous(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        let w = &point[self.index];
        if w.is_zero() {
            return None;
        }
        Some(
            point
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != self.index)
                .map(|(_, c)| c / w)
                .collect(),
        )
    }

    /// `f(X) ↦ f|_{X_c = 1}` expressed in the affine variables.
    pub fn dehomogenize_poly(&self, f: &MultiPoly) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..self.homogeneous.len())
            .map(|i| match self.affine_index(i) {
                Some(j) => MultiPoly::var(&self.affine, j),
                None => MultiPoly::one(&self.affine),
            })
            .collect();
        f.compose(&images)
    }

    /// `X_c^e f(X/X_c)`; requires `deg f ≤ e`.
    pub fn homogenize_poly(&self, f: &MultiPoly, e: u32) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(&self.homogeneous);
        for (exps, c) in f.terms() {
            let d: u32 = exps.iter().sum();
            if d > e {
                return Err(Error::Invalid(format!("{f} has degree above {e}")));
            }
            let mut h = vec![0u32; self.homogeneous.len()];
            for (j, &a) in exps.iter().enumerate() {
                h[self.homogeneous_index(j)] = a;
            }
            h[self.index] = e - d;
            out.add_term(h, c.clone());
        }
        Ok(out)
    }
}

/// Polynomial 1-form `Σ a_i dv_i` over an ordered variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct Form1 {
    vars: Vars,
    coefficients: Vec<MultiPoly>,
}

impl Form1 {
    pub fn new(vars: &Vars, coefficients: Vec<MultiPoly>) -> Result<Self> {
        if coefficients.len() != vars.len() {
            return Err(Error::Invalid(format!(
                "1-form needs {} coefficients, got {}",
                vars.len(),
                coefficients.len()
            )));
        }
        let coefficients = coefficients.iter().map(|c| c.embed(vars)).collect::<Result<_>>()?;
        Ok(Form1 { vars: vars.clone(), coefficients })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Form1 { vars: self.vars.clone(), coefficients: self.coefficients.iter().map(|p| p.scale(c)).collect() }
    }

    /// `i_X(form) = Σ a_i X_i`.
    pub fn contract(&self, field: &VectorFieldGerm) -> Result<MultiPoly> {
        if field.vars != self.vars {
            return Err(Error::VariableMismatch("field and form use different variables".into()));
        }
        let mut acc = MultiPoly::zero(&self.vars);
        for (a, x) in self.coefficients.iter().zip(&field.components) {
            acc += &(a * x);
        }
        Ok(acc)
    }
}

impl fmt::Display for Form1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in self.coefficients.iter().zip(self.vars.iter()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) d{v}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Form1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form1({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Homogeneous(Form1),
    Affine { chart: Chart, form: Form1 },
}

/// Codimension-`k` foliation on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationSpec {
    ambient_dim: usize,
    codim: usize,
    presentation: Presentation,
    twist_degree: Option<i64>,
}

impl FoliationSpec {
    /// Twisted 1-form on `P^n` from its `n+1` homogeneous coefficients.
    /// Checks equal degrees and the Euler contraction.
    pub fn from_homogeneous(vars: &Vars, coefficients: Vec<MultiPoly>) -> Result<Self> {
        let form = Form1::new(vars, coefficients)?;
        let n = vars.len().checked_sub(1).filter(|&n| n >= 2).ok_or_else(|| {
            Error::Invalid("projective space must have dimension at least 2".into())
        })?;
        let spec = FoliationSpec { ambient_dim: n, codim: 1, presentation: Presentation::Homogeneous(form), twist_degree: None };
        let e = spec.coefficient_degree()?;
        let euler = spec.euler_contraction().expect("homogeneous");
        if !euler.is_zero() {
            return Err(Error::EulerContraction(euler.to_string()));
        }
        Ok(FoliationSpec { twist_degree: Some(e as i64 + 1), ..spec })
    }

    /// Affine presentation in one chart; `m` is the degree of `det N_F` when known.
    pub fn from_affine(chart: Chart, coefficients: Vec<MultiPoly>, m: Option<i64>) -> Result<Self> {
        let form = Form1::new(chart.vars(), coefficients)?;
        Ok(FoliationSpec {
            ambient_dim: chart.ambient_dim(),
            codim: 1,
            presentation: Presentation::Affine { chart, form },
            twist_degree: m,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn twist_degree(&self) -> Option<i64> {
        self.twist_degree
    }

    pub fn homogeneous_form(&self) -> Option<&Form1> {
        match &self.presentation {
            Presentation::Homogeneous(f) => Some(f),
            Presentation::Affine { .. } => None,
        }
    }

    /// `Σ X_i a_i`; `None` for affine presentations.
    pub fn euler_contraction(&self) -> Option<MultiPoly> {
        let form = self.homogeneous_form()?;
        let mut acc = MultiPoly::zero(form.vars());
        for (i, a) in form.coefficients().iter().enumerate() {
            acc += &(&MultiPoly::var(form.vars(), i) * a);
        }
        Some(acc)
    }

    /// Common degree of the homogeneous coefficients.
    pub fn coefficient_degree(&self) -> Result<u32> {
        let form = self
            .homogeneous_form()
            .ok_or_else(|| Error::Invalid("foliation has no homogeneous presentation".into()))?;
        let mut degs = Vec::new();
        for c in form.coefficients() {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return Err(Error::Invalid(format!("coefficient {c} is not homogeneous")));
            }
            degs.push(c.total_degree().unwrap());
        }
        if degs.is_empty() {
            return Err(Error::ZeroForm);
        }
        if degs.iter().any(|&d| d != degs[0]) {
            return Err(Error::UnequalDegrees(degs));
        }
        Ok(degs[0])
    }
}

/// Affine form of `F` in `chart`: set `X_c = 1` and drop `dX_c`.
pub fn dehomogenize(f: &FoliationSpec, chart: &Chart) -> Result<Form1> {
    match &f.presentation {
        Presentation::Homogeneous(form) => {
            if form.vars() != chart.homogeneous_vars() {
                return Err(Error::VariableMismatch("chart does not match the form's coordinates".into()));
            }
            let euler = f.euler_contraction().expect("homogeneous");
            if !euler.is_zero() {
                return Err(Error::EulerContraction(euler.to_string()));
            }
            let coeffs = form
                .coefficients()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != chart.index())
                .map(|(_, a)| chart.dehomogenize_poly(a))
                .collect();
            Form1::new(chart.vars(), coeffs)
        }
        Presentation::Affine { chart: own, form } => {
            if own == chart {
                Ok(form.clone())
            } else {
                Err(Error::Unsupported("changing charts of an affine presentation".into()))
            }
        }
    }
}

/// Inverse of [`dehomogenize`] for a form whose homogeneous coefficients have
/// degree `e`: coefficients of `dX_j` are `X_c^e a_j(X/X_c)`, and the
/// coefficient of `dX_c` is fixed by the Euler contraction.
pub fn homogenize(form: &Form1, chart: &Chart, e: u32) -> Result<Form1> {
    let hv = chart.homogeneous_vars();
    let mut coeffs = vec![MultiPoly::zero(hv); hv.len()];
    let mut euler = MultiPoly::zero(hv);
    for (j, a) in form.coefficients().iter().enumerate() {
        let i = chart.homogeneous_index(j);
        coeffs[i] = chart.homogenize_poly(a, e)?;
        euler += &(&MultiPoly::var(hv, i) * &coeffs[i]);
    }
    let xc = MultiPoly::var(hv, chart.index());
    coeffs[chart.index()] = (-euler)
        .div_exact(&xc)
        .ok_or_else(|| Error::Invalid("form does not extend to degree e".into()))?;
    Form1::new(hv, coeffs)
}

/// Point with exact rational or certified numeric coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Coordinates {
    Exact(Vec<Rational>),
    /// Coordinates known to within `error` in each component.
    Numeric { values: Vec<Complex64>, error: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoint {
    pub vars: Vars,
    pub coords: Coordinates,
}

impl AffinePoint {
    pub fn exact(vars: &Vars, coords: Vec<Rational>) -> Self {
        assert_eq!(vars.len(), coords.len());
        AffinePoint { vars: vars.clone(), coords: Coordinates::Exact(coords) }
    }

    pub fn numeric(vars: &Vars, values: Vec<Complex64>, error: f64) -> Self {
        assert_eq!(vars.len(), values.len());
        AffinePoint { vars: vars.clone(), coords: Coordinates::Numeric { values, error } }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coordinates::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&[Rational]> {
        match &self.coords {
            Coordinates::Exact(c) => Some(c),
            Coordinates::Numeric { .. } => None,
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match &self.coords {
            Coordinates::Exact(c) => {
                c.iter().map(|r| Complex64::new(crate::poly::rat_to_f64(r), 0.0)).collect()
            }
            Coordinates::Numeric { values, .. } => values.clone(),
        }
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        match &self.coords {
            Coordinates::Exact(c) => {
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
            }
            Coordinates::Numeric { values, .. } => {
                for (i, x) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
            }
        }
        write!(f, ")")
    }
}

/// Coordinate disc: `n - (k+1)` chart coordinates fixed, the rest free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscSlice {
    chart: Chart,
    fixed: Vec<(usize, Rational)>,
    free: Vec<usize>,
}

impl DiscSlice {
    pub fn new(chart: Chart, fixed: Vec<(usize, Rational)>, free: Vec<usize>) -> Result<Self> {
        let n = chart.ambient_dim();
        let mut seen = vec![false; n];
        for &i in fixed.iter().map(|(i, _)| i).chain(free.iter()) {
            if i >= n || seen[i] {
                return Err(Error::Invalid("disc variables must partition the chart variables".into()));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("disc variables must partition the chart variables".into()));
        }
        Ok(DiscSlice { chart, fixed, free })
    }

    /// Slice from variable names.
    pub fn named(chart: Chart, fixed: &[(&str, Rational)], free: &[&str]) -> Result<Self> {
        let idx = |name: &str| {
            chart
                .vars()
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), offset: 0 })
        };
        let fixed = fixed.iter().map(|(n, v)| Ok((idx(n)?, v.clone()))).collect::<Result<_>>()?;
        let free = free.iter().map(|n| idx(n)).collect::<Result<_>>()?;
        DiscSlice::new(chart, fixed, free)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn fixed(&self) -> &[(usize, Rational)] {
        &self.fixed
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn free_vars(&self) -> Vars {
        vars_from(self.free.iter().map(|&i| self.chart.vars()[i].clone()).collect())
    }

    /// Chart point with the given free coordinates.
    pub fn lift_point(&self, free: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.chart.ambient_dim()];
        for (i, v) in &self.fixed {
            out[*i] = v.clone();
        }
        for (&i, v) in self.free.iter().zip(free) {
            out[i] = v.clone();
        }
        out
    }

    /// Free coordinates of a chart point, `None` if it is off the slice.
    pub fn project_point(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        if self.fixed.iter().any(|(i, v)| &point[*i] != v) {
            return None;
        }
        Some(self.free.iter().map(|&i| point[i].clone()).collect())
    }
}

/// Restricts an affine form to the slice: substitute the fixed values and keep
/// only the differentials of the free variables.
pub fn restrict_to_disc(form: &Form1, slice: &DiscSlice) -> Result<Form1> {
    if form.vars() != slice.chart.vars() {
        return Err(Error::VariableMismatch("form and disc live in different charts".into()));
    }
    let fv = slice.free_vars();
    let mut images = vec![MultiPoly::zero(&fv); form.vars().len()];
    for (i, v) in &slice.fixed {
        images[*i] = MultiPoly::constant(&fv, v.clone());
    }
    for (j, &i) in slice.free.iter().enumerate() {
        images[i] = MultiPoly::var(&fv, j);
    }
    let coeffs: Vec<MultiPoly> = slice.free.iter().map(|&i| form.coefficients()[i].compose(&images)).collect();
    let out = Form1::new(&fv, coeffs)?;
    if out.is_zero() {
        return Err(Error::NotTransversal);
    }
    Ok(out)
}

/// Germ of a polynomial vector field `Σ X_i ∂/∂v_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorFieldGerm {
    vars: Vars,
    components: Vec<MultiPoly>,
}

impl VectorFieldGerm {
    pub fn new(vars: &Vars, components: Vec<MultiPoly>) -> Result<Self> {
        if components.len() != vars.len() {
            return Err(Error::Invalid("vector field needs one component per variable".into()));
        }
        let components = components.iter().map(|c| c.embed(vars)).collect::<Result<_>>()?;
        Ok(VectorFieldGerm { vars: vars.clone(), components })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn jacobian(&self) -> PolyMatrix {
        jacobian(&self.components, &self.vars).expect("components share the variable list")
    }

    pub fn eval(&self, point: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_complex(point)).collect()
    }

    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.eval(point).iter().all(|v| v.is_zero())
    }

    /// `z ↦ X(z + p)`.
    pub fn translate(&self, p: &[Rational]) -> Self {
        VectorFieldGerm { vars: self.vars.clone(), components: self.components.iter().map(|c| c.translate(p)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorFieldGerm { vars: self.vars.clone(), components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// Same field after the linear change of coordinates `z = A w`, i.e.
    /// `Y(w) = A^{-1} X(A w)`.
    pub fn linear_change(&self, a: &[Vec<Rational>], a_inv: &[Vec<Rational>]) -> Self {
        let n = self.dim();
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut acc = MultiPoly::zero(&self.vars);
                for (j, c) in a[i].iter().enumerate() {
                    acc += &MultiPoly::var(&self.vars, j).scale(c);
                }
                acc
            })
            .collect();
        let composed: Vec<MultiPoly> = self.components.iter().map(|c| c.compose(&images)).collect();
        let components = (0..n)
            .map(|i| {
                let mut acc = MultiPoly::zero(&self.vars);
                for (j, c) in a_inv[i].iter().enumerate() {
                    acc += &composed[j].scale(c);
                }
                acc
            })
            .collect();
        VectorFieldGerm { vars: self.vars.clone(), components }
    }

    /// Swaps two coordinates.
    pub fn permute(&self, i: usize, j: usize) -> Self {
        let images: Vec<MultiPoly> = (0..self.dim())
            .map(|l| {
                let src = if l == i {
                    j
                } else if l == j {
                    i
                } else {
                    l
                };
                MultiPoly::var(&self.vars, src)
            })
            .collect();
        let mut components: Vec<MultiPoly> = self.components.iter().map(|c| c.compose(&images)).collect();
        components.swap(i, j);
        VectorFieldGerm { vars: self.vars.clone(), components }
    }
}

impl fmt::Display for VectorFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for VectorFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorFieldGerm{self} in {:?}", self.vars)
    }
}

/// `A dx + B dy ↦ B ∂/∂x − A ∂/∂y`.
pub fn dual_vector_field_2d(form: &Form1) -> Result<VectorFieldGerm> {
    if form.vars().len() != 2 {
        return Err(Error::Invalid("dual field needs a form in two variables".into()));
    }
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let a = &form.coefficients()[0];
    let b = &form.coefficients()[1];
    VectorFieldGerm::new(form.vars(), vec![b.clone(), -a])
}

/// Degree `m` of `det N_F` together with `c₁(det N_F)^{k+1} = m^{k+1} h^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalDegree {
    pub m: i64,
    pub c1: CohomologyClass,
    pub c1_top: CohomologyClass,
}

pub fn det_normal_degree(f: &FoliationSpec) -> Result<NormalDegree> {
    let m = match f.homogeneous_form() {
        Some(_) => f.coefficient_degree()? as i64 + 1,
        None => f.twist_degree.ok_or_else(|| Error::Invalid("twist degree of det N_F unknown".into()))?,
    };
    let n = f.ambient_dim();
    let c1 = CohomologyClass::monomial(n, Rational::from_integer(m.into()), 1);
    let c1_top = c1.pow(f.codim() as u32 + 1);
    Ok(NormalDegree { m, c1, c1_top })
}

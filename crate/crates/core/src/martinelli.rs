//! Numerical Grothendieck residues in two variables from the
//! Bochner–Martinelli boundary integral over a 3-sphere.
//!
//! With `g_k = X_2 ∂_k X_1 − X_1 ∂_k X_2` and `N = |X_1|² + |X_2|²`, the
//! residue of `h dz / (X_1 X_2)` at an isolated zero is
//!
//! ```text
//! (1/4π²) ∫ h · (conj(g_1) F_1 + conj(g_2) F_2) / N² dθ dα dβ
//! ```
//!
//! over `z_1 = r cos θ e^{iα}`, `z_2 = r sin θ e^{iβ}`, where
//! `F_1 = 2r³ sin²θ cos θ e^{iβ}` and `F_2 = −2r³ cos²θ sin θ e^{iα}` come
//! from pulling back `dz̄_k ∧ dz_1 ∧ dz_2`. The orientation is the one giving
//! `+1` for `X = z`, `h = 1`.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use rayon::prelude::*;

use crate::foliation::{Coordinates, VectorFieldGerm};
use crate::poly::{rat_to_f64, GroebnerOptions, MultiPoly, Rational};
use crate::residue::{chern_eval, ChernMonomial};
use crate::singular::isolated_points_2d;
use crate::{Error, Result};

pub const DEFAULT_EVALUATION_BUDGET: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MartinelliOptions {
    pub tol: f64,
    pub max_evaluations: usize,
    /// Relative clearance between the sphere and any other zero.
    pub margin: f64,
}

impl Default for MartinelliOptions {
    fn default() -> Self {
        MartinelliOptions { tol: 1e-6, max_evaluations: DEFAULT_EVALUATION_BUDGET, margin: 0.05 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub radius: f64,
    /// Subdivisions in the polar angle and in each phase angle.
    pub subdivisions: [usize; 2],
}

impl QuadratureResult {
    pub fn imaginary_ok(&self, tol: f64) -> bool {
        self.value.im.abs() < tol
    }
}

/// Polynomial with `f64` coefficients for fast pointwise evaluation.
struct Compiled {
    terms: Vec<(Vec<u32>, f64)>,
    max_exp: Vec<u32>,
}

impl Compiled {
    fn new(p: &MultiPoly) -> Self {
        let n = p.nvars();
        let terms: Vec<(Vec<u32>, f64)> = p.terms().map(|(e, c)| (e.clone(), rat_to_f64(c))).collect();
        let max_exp = (0..n).map(|i| terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0)).collect();
        Compiled { terms, max_exp }
    }

    fn eval(&self, powers: &[Vec<Complex64>]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= powers[i][k as usize];
                }
            }
            acc += t;
        }
        acc
    }
}

struct Integrand {
    h: Compiled,
    x: [Compiled; 2],
    g: [Compiled; 2],
    max_exp: Vec<u32>,
}

impl Integrand {
    fn new(y: &VectorFieldGerm, h: &MultiPoly) -> Self {
        let c = y.components();
        let g1 = &(&c[1] * &c[0].derivative(0)) - &(&c[0] * &c[1].derivative(0));
        let g2 = &(&c[1] * &c[0].derivative(1)) - &(&c[0] * &c[1].derivative(1));
        let parts = [Compiled::new(h), Compiled::new(&c[0]), Compiled::new(&c[1]), Compiled::new(&g1), Compiled::new(&g2)];
        let max_exp = (0..2).map(|i| parts.iter().map(|p| p.max_exp[i]).max().unwrap_or(0)).collect();
        let [h, x1, x2, g1, g2] = parts;
        Integrand { h, x: [x1, x2], g: [g1, g2], max_exp }
    }

    fn powers(&self, z: [Complex64; 2]) -> Vec<Vec<Complex64>> {
        (0..2)
            .map(|i| {
                let mut v = vec![Complex64::new(1.0, 0.0)];
                for k in 1..=self.max_exp[i] as usize {
                    let next = v[k - 1] * z[i];
                    v.push(next);
                }
                v
            })
            .collect()
    }

    fn norm2(&self, z: [Complex64; 2]) -> f64 {
        let pw = self.powers(z);
        self.x[0].eval(&pw).norm_sqr() + self.x[1].eval(&pw).norm_sqr()
    }

    /// Integrand density at angles `(θ, α, β)` on the sphere of radius `r`.
    fn density(&self, r: f64, (s, c): (f64, f64), ea: Complex64, eb: Complex64) -> Complex64 {
        let z = [ea * (r * c), eb * (r * s)];
        let pw = self.powers(z);
        let n = self.x[0].eval(&pw).norm_sqr() + self.x[1].eval(&pw).norm_sqr();
        let r3 = r * r * r;
        let f1 = eb * (2.0 * r3 * s * s * c);
        let f2 = ea * (-2.0 * r3 * c * c * s);
        let num = self.g[0].eval(&pw).conj() * f1 + self.g[1].eval(&pw).conj() * f2;
        self.h.eval(&pw) * num / (n * n)
    }
}

fn simpson_weights(n: usize) -> Vec<f64> {
    // composite Simpson on n intervals (n even), n + 1 nodes
    (0..=n)
        .map(|i| {
            if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            }
        })
        .collect()
}

fn periodic_simpson_weights(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { 2.0 } else { 4.0 }).collect()
}

/// One tensor-product Simpson estimate with `nt` subdivisions of the polar
/// angle and `np` of each phase.
///
/// `θ` is reached through `θ(t) = (π/2)(t − sin(2πt)/(2π))` on `t ∈ [0, 1]`;
/// `θ'` vanishes to second order at both ends, which removes the endpoint
/// error terms of the rule.
fn simpson(f: &Integrand, r: f64, [nt, np]: [usize; 2]) -> Complex64 {
    let ht = 1.0 / nt as f64;
    let hp = 2.0 * PI / np as f64;
    let wt = simpson_weights(nt);
    let wp = periodic_simpson_weights(np);
    let phases: Vec<Complex64> = (0..np).map(|k| Complex64::from_polar(1.0, hp * k as f64)).collect();
    let rows: Vec<Complex64> = (0..=nt)
        .into_par_iter()
        .map(|i| {
            let t = ht * i as f64;
            let u = 2.0 * PI * t;
            let theta = (PI / 2.0) * (t - 2.0 * u.sin() / (3.0 * PI) + (2.0 * u).sin() / (12.0 * PI));
            let dtheta = (PI / 2.0) * (1.0 - 4.0 * u.cos() / 3.0 + (2.0 * u).cos() / 3.0);
            if dtheta == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let sc = (theta.sin(), theta.cos());
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, ea) in phases.iter().enumerate() {
                let mut row = Complex64::new(0.0, 0.0);
                for (b, eb) in phases.iter().enumerate() {
                    row += f.density(r, sc, *ea, *eb) * wp[b];
                }
                acc += row * wp[a];
            }
            acc * (wt[i] * dtheta)
        })
        .collect();
    // fixed-order reduction keeps results bit-reproducible
    let total: Complex64 = rows.iter().sum();
    total * (ht / 3.0) * (hp / 3.0) * (hp / 3.0) / (4.0 * PI * PI)
}

/// Zeros of `X` other than `p` closer than `r(1 + margin)`, and points of the
/// sphere where `|X|²` nearly vanishes.
fn check_clearance(x: &VectorFieldGerm, p: &[Rational], r: f64, f: &Integrand, margin: f64) -> Result<()> {
    let pf: Vec<f64> = p.iter().map(rat_to_f64).collect();
    let mut nearest = f64::INFINITY;
    for z in isolated_points_2d(x, &GroebnerOptions::default())? {
        let d = match &z.point.coords {
            Coordinates::Exact(q) if q == p => continue,
            Coordinates::Exact(q) => q.iter().zip(&pf).map(|(a, b)| (rat_to_f64(a) - b).powi(2)).sum::<f64>().sqrt(),
            Coordinates::Numeric { values, .. } => values
                .iter()
                .zip(&pf)
                .map(|(a, b)| (a - Complex64::new(*b, 0.0)).norm_sqr())
                .sum::<f64>()
                .sqrt(),
        };
        nearest = nearest.min(d);
    }
    if nearest < r * (1.0 + margin) {
        return Err(Error::NearbyZero { distance: nearest });
    }
    // sampled minimum of |X|² on the sphere against its scale at the radius
    let m = 16;
    let mut min = f64::INFINITY;
    let mut max = 0.0f64;
    for i in 0..=m {
        let t = (PI / 2.0) * i as f64 / m as f64;
        for a in 0..m {
            for b in 0..m {
                let ea = Complex64::from_polar(1.0, 2.0 * PI * a as f64 / m as f64);
                let eb = Complex64::from_polar(1.0, 2.0 * PI * b as f64 / m as f64);
                let v = f.norm2([ea * (r * t.cos()), eb * (r * t.sin())]);
                min = min.min(v);
                max = max.max(v);
            }
        }
    }
    if !(min > 1e-12 * max.max(f64::MIN_POSITIVE)) {
        return Err(Error::NearbyZero { distance: r });
    }
    Ok(())
}

/// At a nondegenerate zero (moved to the origin) replaces `Y` by `J⁻¹ Y` and
/// `h` by `h / det J`. The residue is unchanged and `|Y|²` becomes nearly
/// isotropic on small spheres, which the quadrature needs far fewer nodes for.
fn precondition(y: &VectorFieldGerm, h: MultiPoly) -> (VectorFieldGerm, MultiPoly) {
    let origin = vec![Rational::zero(); 2];
    let j = y.jacobian().eval(&origin);
    let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
    if det.is_zero() {
        return (y.clone(), h);
    }
    let inv = [[&j[1][1] / &det, -&j[0][1] / &det], [-&j[1][0] / &det, &j[0][0] / &det]];
    let c = y.components();
    let rows: Vec<MultiPoly> = inv.iter().map(|r| &c[0].scale(&r[0]) + &c[1].scale(&r[1])).collect();
    let y = VectorFieldGerm::new(y.vars(), rows).expect("same variables");
    (y, h.scale(&(Rational::one() / det)))
}

/// Residue of `φ(JX) dz / (X_1 X_2)` at `p` by the boundary integral over the
/// sphere of radius `r`, refined dyadically until further refinement in each
/// direction changes the value by less than `tol` in total.
pub fn bm_residue(x: &VectorFieldGerm, p: &[Rational], phi: &ChernMonomial, r: f64, opts: &MartinelliOptions) -> Result<QuadratureResult> {
    if x.dim() != 2 {
        return Err(Error::Unsupported("boundary integrals are implemented for two variables".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Invalid("radius must be positive".into()));
    }
    if !x.vanishes_at(p) {
        return Err(Error::Invalid(format!("center is not a zero of {x}")));
    }
    let y = x.translate(p);
    let h = chern_eval(phi, &y.jacobian().rows())?;
    let (y, h) = precondition(&y, h);
    let f = Integrand::new(&y, &h);
    check_clearance(x, p, r, &f, opts.margin)?;

    // Dyadic refinement, one direction at a time: the polar angle and the
    // pair of phase angles are doubled separately and the direction with the
    // larger change is refined further.
    let cost = |[nt, np]: [usize; 2]| (nt + 1) * np * np;
    let mut cache: HashMap<[usize; 2], Complex64> = HashMap::new();
    let mut evaluations = 0usize;
    let mut eval = |n: [usize; 2], evaluations: &mut usize| -> Result<Complex64> {
        if let Some(v) = cache.get(&n) {
            return Ok(*v);
        }
        if *evaluations + cost(n) > opts.max_evaluations {
            return Err(Error::NoConvergence(format!(
                "boundary integral did not settle within {} evaluations",
                opts.max_evaluations
            )));
        }
        *evaluations += cost(n);
        let v = simpson(&f, r, n);
        cache.insert(n, v);
        Ok(v)
    };
    let mut n = [8usize, 8usize];
    loop {
        let s = eval(n, &mut evaluations)?;
        let st = eval([2 * n[0], n[1]], &mut evaluations)?;
        let sp = eval([n[0], 2 * n[1]], &mut evaluations)?;
        let (et, ep) = ((st - s).norm(), (sp - s).norm());
        if et + ep < opts.tol {
            return Ok(QuadratureResult { value: s, error_estimate: et + ep, evaluations, radius: r, subdivisions: n });
        }
        if et >= ep {
            n[0] *= 2;
        } else {
            n[1] *= 2;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub results: Vec<QuadratureResult>,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Residues at several radii agree within `3·tol`.
pub fn radius_stability(x: &VectorFieldGerm, p: &[Rational], phi: &ChernMonomial, radii: &[f64], opts: &MartinelliOptions) -> Result<StabilityReport> {
    let results: Vec<QuadratureResult> = radii.iter().map(|&r| bm_residue(x, p, phi, r, opts)).collect::<Result<_>>()?;
    let mut max_deviation = 0.0f64;
    for a in &results {
        for b in &results {
            max_deviation = max_deviation.max((a.value - b.value).norm());
        }
    }
    Ok(StabilityReport { passed: max_deviation < 3.0 * opts.tol, results, max_deviation })
}

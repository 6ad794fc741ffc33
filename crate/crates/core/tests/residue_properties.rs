use bbresidue::foliation::{dual_vector_field_2d, AffinePoint, FoliationSpec, Form1, VectorFieldGerm};
use bbresidue::martinelli::{bm_residue, radius_stability, MartinelliOptions};
use bbresidue::poly::{parse_poly, rat, rat_to_f64, vars, GroebnerOptions};
use bbresidue::residue::{grothendieck_nondegenerate, transformation_law, ChernMonomial};
use bbresidue::{MultiPoly, Rational, Vars};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn field(texts: &[&str], names: &[&str]) -> VectorFieldGerm {
    let v = vars(names);
    VectorFieldGerm::new(&v, texts.iter().map(|t| parse_poly(t, &v).unwrap()).collect()).unwrap()
}

fn exact_residue(x: &VectorFieldGerm, p: &[Rational], phi: &ChernMonomial) -> Rational {
    transformation_law(x, p, phi, &GroebnerOptions::default()).unwrap().residue
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

/// Rational-point fixtures with their residues against `c1^2` and a sphere
/// radius that keeps the other zeros outside.
fn fixtures() -> Vec<(VectorFieldGerm, Vec<Rational>, Rational)> {
    fixtures_with_radii().into_iter().map(|(x, p, r, _)| (x, p, r)).collect()
}

fn fixtures_with_radii() -> Vec<(VectorFieldGerm, Vec<Rational>, Rational, f64)> {
    let o = || vec![rat(0, 1), rat(0, 1)];
    let ex2 = || field(&["2x^2 - x - z", "-2z + 3x z"], &["x", "z"]);
    vec![
        (field(&["x", "-y"], &["x", "y"]), o(), rat(0, 1), 0.5),
        (field(&["-3x", "-t"], &["x", "t"]), o(), rat(16, 3), 0.5),
        (ex2(), vec![rat(2, 3), rat(2, 9)], rat(25, 6), 0.1),
        (ex2(), vec![rat(1, 2), rat(0, 1)], rat(-1, 2), 0.1),
        (ex2(), o(), rat(9, 2), 0.1),
        (field(&["x^2", "y"], &["x", "y"]), o(), rat(4, 1), 1.0),
        (field(&["x^3 - x^2", "y"], &["x", "y"]), o(), rat(3, 1), 0.5),
        (field(&["x + y^2", "y"], &["x", "y"]), o(), rat(4, 1), 0.5),
    ]
}

#[test]
fn fixture_values_from_transformation_law() {
    let phi = ChernMonomial::c1_squared();
    for (x, p, r) in fixtures() {
        assert_eq!(exact_residue(&x, &p, &phi), r, "{x} at {p:?}");
    }
}

#[test]
fn methods_agree_on_nondegenerate_points() {
    let phi = ChernMonomial::c1_squared();
    for (x, p, r) in fixtures() {
        let pt = AffinePoint::exact(x.vars(), p.clone());
        if let Ok(v) = grothendieck_nondegenerate(&x, &pt, &phi) {
            assert_eq!(v.exact(), Some(&r), "{x} at {p:?}");
        }
    }
}

#[test]
fn martinelli_matches_exact_values() {
    let phi = ChernMonomial::c1_squared();
    let opts = MartinelliOptions::default();
    for (x, p, r, radius) in fixtures_with_radii() {
        let q = bm_residue(&x, &p, &phi, radius, &opts).unwrap();
        let err = (q.value.re - rat_to_f64(&r)).abs();
        assert!(err < q.error_estimate.max(opts.tol), "{x} at {p:?}: {} vs {r} (estimate {})", q.value, q.error_estimate);
        assert!(q.imaginary_ok(opts.tol), "{x}: {}", q.value);
    }
}

#[test]
fn martinelli_radius_and_rotation_invariance() {
    let phi = ChernMonomial::c1_squared();
    let opts = MartinelliOptions::default();
    let a = vec![vec![rat(3, 5), rat(-4, 5)], vec![rat(4, 5), rat(3, 5)]];
    let a_inv = vec![vec![rat(3, 5), rat(4, 5)], vec![rat(-4, 5), rat(3, 5)]];
    for (x, p, _, radius) in fixtures_with_radii().into_iter().step_by(2) {
        let s = radius_stability(&x, &p, &phi, &[radius, 0.75 * radius], &opts).unwrap();
        assert!(s.max_deviation < 3.0 * opts.tol, "{x}: {}", s.max_deviation);
        let y = x.linear_change(&a, &a_inv);
        let q: Vec<Rational> = (0..2).map(|i| &a_inv[i][0] * &p[0] + &a_inv[i][1] * &p[1]).collect();
        let before = bm_residue(&x, &p, &phi, radius, &opts).unwrap().value;
        let after = bm_residue(&y, &q, &phi, radius, &opts).unwrap().value;
        assert!((before - after).norm() < 3.0 * opts.tol, "{x}: {before} vs {after}");
        assert_eq!(exact_residue(&x, &p, &phi), exact_residue(&y, &q, &phi));
    }
}

fn homogeneous_poly(v: &Vars, deg: u32, coeffs: &[i64]) -> MultiPoly {
    let n = v.len();
    let mut monos = Vec::new();
    let mut e = vec![0u32; n];
    fn go(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(e.clone());
            return;
        }
        for a in 0..=left {
            e[i] = a;
            go(i + 1, left - a, e, out);
        }
    }
    go(0, deg, &mut e, &mut monos);
    let mut p = MultiPoly::zero(v);
    for (m, c) in monos.into_iter().zip(coeffs.iter().cycle()) {
        p.add_term(m, rat(*c, 1));
    }
    p
}

proptest! {
    #[test]
    fn scaling_invariance(c in nonzero_rational(), k in 0usize..8) {
        let phi = ChernMonomial::c1_squared();
        let (x, p, r) = fixtures().swap_remove(k);
        prop_assert_eq!(exact_residue(&x.scale(&c), &p, &phi), r);
    }

    #[test]
    fn coordinate_swap_covariance(k in 0usize..8) {
        let phi = ChernMonomial::c1_squared();
        let (x, p, r) = fixtures().swap_remove(k);
        let q = vec![p[1].clone(), p[0].clone()];
        prop_assert_eq!(exact_residue(&x.permute(0, 1), &q, &phi), r);
    }

    #[test]
    fn product_fields_are_additive(
        roots in prop::collection::btree_set(-4i64..=4, 1..=3),
        lead in nonzero_rational(),
        g in nonzero_rational(),
    ) {
        // X = (lead * Π (x - r), g y); at (r, 0), φ = c1^2 gives (f'(r) + g)^2 / (f'(r) g)
        let v = vars(&["x", "y"]);
        let xv = MultiPoly::var(&v, 0);
        let mut f = MultiPoly::constant(&v, lead.clone());
        for r in &roots {
            f = &f * &(&xv - &MultiPoly::constant(&v, rat(*r, 1)));
        }
        let x = VectorFieldGerm::new(&v, vec![f.clone(), MultiPoly::var(&v, 1).scale(&g)]).unwrap();
        let phi = ChernMonomial::c1_squared();
        let df = f.derivative(0);
        let mut total = Rational::zero();
        let mut expected = Rational::zero();
        for r in &roots {
            let p = vec![rat(*r, 1), rat(0, 1)];
            let d = df.eval(&p);
            let local = exact_residue(&x, &p, &phi);
            let formula = (&d + &g) * (&d + &g) / (&d * &g);
            prop_assert_eq!(&local, &formula);
            total += local;
            expected += formula;
        }
        prop_assert_eq!(total, expected);
    }

    #[test]
    fn dual_field_annihilates_form(a in prop::collection::vec(-4i64..=4, 6), b in prop::collection::vec(-4i64..=4, 6)) {
        let v = vars(&["x", "y"]);
        let fa = homogeneous_poly(&v, 2, &a);
        let fb = &homogeneous_poly(&v, 1, &b) + &MultiPoly::one(&v);
        let form = Form1::new(&v, vec![fa, fb]).unwrap();
        let x = dual_vector_field_2d(&form).unwrap();
        prop_assert!(form.contract(&x).unwrap().is_zero());
    }

    #[test]
    fn euler_contraction_of_built_forms(d in 1u32..=2, coeffs in prop::collection::vec(-3i64..=3, 1..8)) {
        // Σ_{i<j} a_ij (X_i dX_j - X_j dX_i) always satisfies the Euler condition
        let v = vars(&["X", "Y", "Z", "T"]);
        let mut w = vec![MultiPoly::zero(&v); 4];
        let mut shift = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let rotated: Vec<i64> = coeffs.iter().cycle().skip(shift).take(coeffs.len()).copied().collect();
                shift += 1;
                let a = homogeneous_poly(&v, d - 1, &rotated);
                w[j] = &w[j] + &(&a * &MultiPoly::var(&v, i));
                w[i] = &w[i] - &(&a * &MultiPoly::var(&v, j));
            }
        }
        prop_assume!(w.iter().any(|c| !c.is_zero()));
        let f = FoliationSpec::from_homogeneous(&v, w).unwrap();
        prop_assert_eq!(f.twist_degree(), Some(d as i64 + 1));
        prop_assert!(f.euler_contraction().unwrap().is_zero());
    }
}

#[test]
fn identity_rotation_is_trivial() {
    let one = Rational::one();
    let id = vec![vec![one.clone(), rat(0, 1)], vec![rat(0, 1), one]];
    let x = field(&["x^2", "y"], &["x", "y"]);
    assert_eq!(x.linear_change(&id, &id).components(), x.components());
}

use bbresidue::poly::{
    parse_poly, quotient_dimension, rat, rational_roots, resultant, vars, GroebnerOptions, Ideal, QuotientDim, TermOrder,
    UniPoly,
};
use bbresidue::{MultiPoly, Rational, Vars};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v3() -> Vars {
    vars(&["x", "y", "z"])
}

fn poly_strategy(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (prop::collection::vec(0..=max_exp, nvars), -6i64..=6, 1i64..=4);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let v = if nvars == 3 { v3() } else { vars(&["x", "y"]) };
        let mut p = MultiPoly::zero(&v);
        for (e, n, d) in terms {
            p.add_term(e, rat(n, d));
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_axioms(f in poly_strategy(3, 3, 5), g in poly_strategy(3, 3, 5), h in poly_strategy(3, 3, 5)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn leibniz_rule(f in poly_strategy(3, 4, 6), g in poly_strategy(3, 4, 6), i in 0usize..3) {
        let lhs = (&f * &g).derivative(i);
        let rhs = &(&f * &g.derivative(i)) + &(&g * &f.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pure_power_quotients(a in 1u32..=4, b in 1u32..=4) {
        let v = vars(&["x", "y"]);
        let i = Ideal::new(&v, vec![
            parse_poly(&format!("x^{a}"), &v).unwrap(),
            parse_poly(&format!("y^{b}"), &v).unwrap(),
        ], TermOrder::GrevLex).unwrap();
        prop_assert_eq!(quotient_dimension(&i).unwrap(), QuotientDim::Finite((a * b) as usize));
    }

    #[test]
    fn membership_matches_cofactors(f in poly_strategy(2, 2, 3), g in poly_strategy(2, 2, 3), a in poly_strategy(2, 2, 3), b in poly_strategy(2, 2, 3)) {
        let v = vars(&["x", "y"]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let ideal = Ideal::new(&v, vec![f.clone(), g.clone()], TermOrder::GrevLex).unwrap();
        let opts = GroebnerOptions { max_reductions: 2_000 };
        let Ok(gb) = ideal.groebner_with_cofactors(&opts) else { return Ok(()) };
        let member = &(&a * &f) + &(&b * &g);
        let nf = gb.basis.normal_form(&member);
        prop_assert!(nf.remainder.is_zero());
        let cof = gb.lift(&member).unwrap().expect("member of the ideal");
        prop_assert_eq!(&(&cof[0] * &f) + &(&cof[1] * &g), member);
        // a non-member has a nonzero remainder and no cofactors
        let probe = &a + &MultiPoly::one(&v);
        let nf = gb.basis.normal_form(&probe);
        prop_assert_eq!(nf.remainder.is_zero(), gb.lift(&probe).unwrap().is_some());
    }
}

fn random_ideal(rng: &mut ChaCha8Rng) -> Ideal {
    let v = v3();
    let ngens = rng.gen_range(2..=3);
    let gens = (0..ngens)
        .map(|_| {
            let mut p = MultiPoly::zero(&v);
            for _ in 0..rng.gen_range(1..=3) {
                let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
                p.add_term(e, rat(rng.gen_range(-3..=3), 1));
            }
            p
        })
        .collect();
    Ideal::new(&v, gens, TermOrder::GrevLex).unwrap()
}

#[test]
fn groebner_is_idempotent_on_random_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = GroebnerOptions::default();
    let mut checked = 0;
    while checked < 20 {
        let ideal = random_ideal(&mut rng);
        if ideal.generators().is_empty() {
            continue;
        }
        let g = ideal.groebner(&opts).unwrap();
        let gg = g.groebner(&opts).unwrap();
        assert_eq!(g.generators(), gg.generators(), "ideal {:?}", ideal.generators());
        for f in ideal.generators() {
            assert!(g.normal_form(f).remainder.is_zero());
        }
        let lex = ideal.with_order(TermOrder::Lex).groebner(&opts).unwrap();
        for f in g.generators() {
            assert!(lex.normal_form(f).remainder.is_zero());
        }
        checked += 1;
    }
}

#[test]
fn resultant_vanishes_on_common_zeros() {
    let v = vars(&["x", "y"]);
    let pairs = [
        ("x^2 + y^2 - 5", "x y - 2"),
        ("x^2 - y", "x + y - 2"),
        ("2x^2 - x - y", "-2y + 3x y"),
        ("x^3 - y^2", "x - y"),
    ];
    for (a, b) in pairs {
        let f = parse_poly(a, &v).unwrap();
        let g = parse_poly(b, &v).unwrap();
        let r = resultant(&f, &g, 1);
        let ru = UniPoly::new(r.to_univariate(0).unwrap());
        let roots: Vec<Rational> = rational_roots(&ru).roots.into_iter().map(|(x, _)| x).collect();
        let mut found = 0;
        for p in -8..=8 {
            for q in 1..=3 {
                for s in -8..=8 {
                    for t in 1..=3 {
                        let pt = [rat(p, q), rat(s, t)];
                        if f.eval(&pt).is_zero() && g.eval(&pt).is_zero() {
                            assert!(r.eval(&pt).is_zero(), "{a}, {b} at {pt:?}");
                            assert!(roots.contains(&pt[0]));
                            found += 1;
                        }
                    }
                }
            }
        }
        assert!(found > 0, "{a}, {b}");
    }
}

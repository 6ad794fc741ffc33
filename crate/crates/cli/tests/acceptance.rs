//! Acceptance suite. Prints one `criterion N: PASS|FAIL` line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use bbresidue::cenkl::{decompose, lift, weight_basis, Alphabet, BundleRingClass, SymPoly};
use bbresidue::chern::{global_check, CohomologyClass};
use bbresidue::foliation::{AffinePoint, FoliationSpec, VectorFieldGerm};
use bbresidue::martinelli::{bm_residue, radius_stability, MartinelliOptions};
use bbresidue::poly::{parse_poly, rat, rat_to_f64, vars, vars_from, GroebnerOptions, Ideal, TermOrder};
use bbresidue::residue::{grothendieck_nondegenerate, transformation_law, ChernMonomial};
use bbresidue::{MultiPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn bbres(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_bbres")).args(args).output().expect("bbres runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn residues_of(report: &Value) -> Vec<String> {
    report["components"]
        .as_array()
        .map(|cs| cs.iter().map(|c| c["residue"]["value"].as_str().unwrap_or("?").to_string()).collect())
        .unwrap_or_default()
}

fn field(texts: &[&str], names: &[&str]) -> VectorFieldGerm {
    let v = vars(names);
    VectorFieldGerm::new(&v, texts.iter().map(|t| parse_poly(t, &v).unwrap()).collect()).unwrap()
}

fn exact(x: &VectorFieldGerm, p: &[Rational]) -> Rational {
    transformation_law(x, p, &ChernMonomial::c1_squared(), &GroebnerOptions::default()).unwrap().residue
}

/// `tr(J)^2 / det(J)` at `p`, from the partial derivatives.
fn jacobian_formula(x: &VectorFieldGerm, p: &[Rational]) -> Rational {
    let c = x.components();
    let d = |i: usize, j: usize| c[i].derivative(j).eval(p);
    let tr = d(0, 0) + d(1, 1);
    let det = d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0);
    &tr * &tr / det
}

fn foliation_of(file: &str) -> FoliationSpec {
    let json: Value = serde_json::from_str(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
    let names: Vec<String> = json["form"]["variables"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().into()).collect();
    let hv = vars_from(names);
    let coeffs = json["form"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| parse_poly(t.as_str().unwrap(), &hv).unwrap())
        .collect();
    FoliationSpec::from_homogeneous(&hv, coeffs).unwrap()
}

/// Rational-point fixtures for `c1^2` with sphere radii that exclude the other zeros.
fn nondegenerate_fixtures() -> Vec<(VectorFieldGerm, Vec<Rational>, f64)> {
    let o = || vec![rat(0, 1), rat(0, 1)];
    let ex2 = || field(&["2x^2 - x - z", "-2z + 3x z"], &["x", "z"]);
    vec![
        (field(&["x", "-y"], &["x", "y"]), o(), 0.5),
        (field(&["-3x", "-t"], &["x", "t"]), o(), 0.5),
        (ex2(), vec![rat(2, 3), rat(2, 9)], 0.1),
        (ex2(), vec![rat(1, 2), rat(0, 1)], 0.1),
        (ex2(), o(), 0.1),
        (field(&["2x + y", "x + 3y"], &["x", "y"]), o(), 0.5),
        (field(&["x^2 - 1", "y"], &["x", "y"]), vec![rat(1, 1), rat(0, 1)], 0.5),
    ]
}

fn degenerate_fixtures() -> Vec<(VectorFieldGerm, Vec<Rational>, Rational, f64)> {
    let o = || vec![rat(0, 1), rat(0, 1)];
    vec![
        (field(&["x^2", "y"], &["x", "y"]), o(), rat(4, 1), 1.0),
        (field(&["x^3 - x^2", "y"], &["x", "y"]), o(), rat(3, 1), 0.5),
        (field(&["x + y^2", "y"], &["x", "y"]), o(), rat(4, 1), 0.5),
    ]
}

fn criterion_1() -> Outcome {
    let (code, r) = bbres(&["check", fixture("logarithmic_p3.json").to_str().unwrap()]);
    ensure!(code == 0, "exit code {code}");
    let got = residues_of(&r);
    ensure!(got == ["0", "0", "0", "16/3", "16/3", "16/3"], "residues {got:?}");
    let g = &r["global"];
    ensure!(g["lhs"] == "16*h^2" && g["rhs"] == "16*h^2" && g["status"] == "PASS", "global {g}");
    Ok(format!("residues {got:?}, global 16*h^2"))
}

fn criterion_2() -> Outcome {
    let (code, r) = bbres(&["check", fixture("exceptional_p3.json").to_str().unwrap()]);
    ensure!(code == 0, "exit code {code}");
    let got = residues_of(&r);
    ensure!(got == ["25/6", "-1/2", "9/2"], "residues {got:?}");
    let cs = r["components"].as_array().unwrap();
    let degrees: Vec<u64> = cs.iter().map(|c| c["degree"].as_u64().unwrap()).collect();
    ensure!(degrees == [3, 2, 1], "degrees {degrees:?}");
    for c in cs {
        ensure!(c["verification"]["status"] == "PASS", "{} not verified", c["name"]);
    }
    let g = &r["global"];
    ensure!(g["rhs"] == "16*h^2" && g["discrepancy"] == "0" && g["status"] == "PASS", "global {g}");
    Ok(format!("residues {got:?} on degrees {degrees:?}, sum 16*h^2"))
}

fn criterion_3() -> Outcome {
    let phi = ChernMonomial::c1_squared();
    let opts = MartinelliOptions::default();
    let fixtures = nondegenerate_fixtures();
    for (x, p, radius) in &fixtures {
        let law = exact(x, p);
        let formula = jacobian_formula(x, p);
        ensure!(law == formula, "{x} at {p:?}: law {law} vs formula {formula}");
        let lib = grothendieck_nondegenerate(x, &AffinePoint::exact(x.vars(), p.clone()), &phi).map_err(|e| e.to_string())?;
        ensure!(lib.exact() == Some(&formula), "{x} at {p:?}: library formula {:?}", lib.exact());
        let q = bm_residue(x, p, &phi, *radius, &opts).map_err(|e| e.to_string())?;
        let err = (q.value.re - rat_to_f64(&law)).abs();
        ensure!(err <= q.error_estimate.max(1e-4) && q.value.im.abs() <= q.error_estimate.max(1e-4), "{x} at {p:?}: {} vs {law}", q.value);
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn criterion_4() -> Outcome {
    let x = field(&["x^2", "y"], &["x", "y"]);
    let p = [rat(0, 1), rat(0, 1)];
    // (x^2, y) is already monomial: the residue is the x^1 y^0 coefficient of tr(JX)^2
    let c = x.components();
    let tr = &c[0].derivative(0) + &c[1].derivative(1);
    let h = &tr * &tr;
    let oracle = h.derivative(0).eval(&p);
    let law = exact(&x, &p);
    ensure!(law == rat(4, 1) && oracle == law, "law {law}, coefficient oracle {oracle}");
    let opts = MartinelliOptions::default();
    let phi = ChernMonomial::c1_squared();
    let mut seen = Vec::new();
    for r in [1.0, 0.5] {
        let q = bm_residue(&x, &p, &phi, r, &opts).map_err(|e| e.to_string())?;
        ensure!((q.value - 4.0).norm() < 1e-3, "radius {r}: {}", q.value);
        seen.push(format!("{:.8}", q.value.re));
    }
    Ok(format!("exact 4, Martinelli {seen:?}"))
}

fn criterion_5() -> Outcome {
    let (code, r) = bbres(&["sing", fixture("exceptional_p3.json").to_str().unwrap()]);
    ensure!(code == 0, "exit code {code}");
    let zeros = r["components"][0]["disc"]["zeros"].as_array().ok_or("no zeros")?;
    let mut points: Vec<Vec<String>> = Vec::new();
    for z in zeros {
        ensure!(z["multiplicity"] == 1 && z["nondegenerate"] == true, "zero {z}");
        points.push(z["point"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect());
    }
    points.sort();
    let want = vec![vec!["0".to_string(), "0".into()], vec!["1/2".into(), "0".into()], vec!["2/3".into(), "2/9".into()]];
    ensure!(points == want, "points {points:?}");
    Ok("(x, z) = (2/3, 2/9), (1/2, 0), (0, 0) on y = 1".into())
}

fn elementary(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![rat(1, 1)];
    for v in values {
        e.push(rat(0, 1));
        for j in (1..e.len()).rev() {
            let add = &e[j - 1] * v;
            e[j] += add;
        }
    }
    e
}

fn eval_sym(p: &SymPoly, gens: &[Rational]) -> Rational {
    p.poly().eval(&gens[1..=p.generators()])
}

fn criterion_6() -> Outcome {
    let mut roundtrips = 0;
    for w in 0..=3 {
        let basis = if w == 0 { vec![vec![]] } else { weight_basis(w) };
        for e in basis {
            let phi = SymPoly::monomial(Alphabet::Sigma, e, rat(1, 1));
            let psi = lift(&phi).map_err(|err| format!("lift {phi}: {err}"))?;
            let back = decompose(&psi).map_err(|err| err.to_string())?;
            ensure!(back.phi == phi, "decompose(lift({phi})).phi = {}", back.phi);
            roundtrips += 1;
        }
    }
    ensure!(roundtrips == 7, "{roundtrips} monomials");

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut reassembled = 0;
    for w in 1..=4 {
        for e in weight_basis(w) {
            let psi = SymPoly::monomial(Alphabet::Rho, e, rat(1, 1));
            let d = decompose(&psi).map_err(|err| err.to_string())?;
            ensure!(d.weight + 1 == w, "weight of {psi}");
            for (k, part) in d.reassemble() {
                ensure!(part.weight() == Some(w - k), "{psi}: y^{k} part {part} has the wrong weight");
            }
            for _ in 0..3 {
                let roots: Vec<Rational> = (0..5).map(|_| rat(rng.gen_range(-7..=7), rng.gen_range(1..=4))).collect();
                let y = rat(rng.gen_range(-7..=7), rng.gen_range(1..=4));
                let sigma = elementary(&roots);
                let mut with_y = roots.clone();
                with_y.push(y.clone());
                let rho = elementary(&with_y);
                let lhs = eval_sym(&psi, &rho);
                let mut rhs = rat(0, 1);
                let mut y_pow = rat(1, 1);
                for k in 0..=w {
                    if let Some(part) = d.reassemble().get(&k) {
                        rhs += &y_pow * eval_sym(part, &sigma);
                    }
                    y_pow *= &y;
                }
                ensure!(lhs == rhs, "{psi}: {lhs} != {rhs}");
            }
            reassembled += 1;
        }
    }

    for n in 2..=5 {
        for m in -3..=4 {
            let t = &BundleRingClass::xi(n, m) - &BundleRingClass::h(n, m).scale(&Rational::from_integer(m.into()));
            ensure!((&t * &t).is_zero(), "(xi - {m}h)^2 != 0 with n = {n}");
        }
    }
    Ok(format!("{roundtrips} roundtrips, {reassembled} reassemblies, (xi - mh)^2 = 0"))
}

fn random_ideal(rng: &mut ChaCha8Rng) -> Ideal {
    let v = vars(&["x", "y", "z"]);
    let gens = (0..rng.gen_range(2..=3))
        .map(|_| {
            let mut p = MultiPoly::zero(&v);
            for _ in 0..rng.gen_range(1..=3) {
                let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
                p.add_term(e, rat(rng.gen_range(-3..=3), 1));
            }
            p
        })
        .filter(|p: &MultiPoly| !p.is_zero())
        .collect();
    Ideal::new(&v, gens, TermOrder::GrevLex).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut all: Vec<(VectorFieldGerm, Vec<Rational>)> =
        nondegenerate_fixtures().into_iter().map(|(x, p, _)| (x, p)).collect();
    all.extend(degenerate_fixtures().into_iter().map(|(x, p, _, _)| (x, p)));
    for _ in 0..5 {
        let c = loop {
            let n = rng.gen_range(-9..=9);
            if n != 0 {
                break rat(n, rng.gen_range(1..=5));
            }
        };
        for (x, p) in &all {
            ensure!(exact(&x.scale(&c), p) == exact(x, p), "{x} scaled by {c}");
        }
    }

    let phi = ChernMonomial::c1_squared();
    let opts = MartinelliOptions::default();
    let mut stable: Vec<(VectorFieldGerm, Vec<Rational>, f64)> =
        nondegenerate_fixtures().into_iter().step_by(3).collect();
    let (x, p, _, r) = degenerate_fixtures().swap_remove(1);
    stable.push((x, p, r));
    for (x, p, r) in &stable {
        let s = radius_stability(x, p, &phi, &[*r, 0.75 * r, 0.5 * r], &opts).map_err(|e| e.to_string())?;
        ensure!(s.passed, "{x} at {p:?}: deviation {}", s.max_deviation);
    }

    for file in ["logarithmic_p3.json", "exceptional_p3.json", "exceptional_p3_mutated.json"] {
        let f = foliation_of(file);
        ensure!(f.euler_contraction().is_some_and(|e| e.is_zero()), "{file}: Euler contraction nonzero");
    }

    let gopts = GroebnerOptions::default();
    let mut checked = 0;
    while checked < 20 {
        let ideal = random_ideal(&mut rng);
        if ideal.generators().is_empty() {
            continue;
        }
        let g = ideal.groebner(&gopts).map_err(|e| e.to_string())?;
        let gg = g.groebner(&gopts).map_err(|e| e.to_string())?;
        ensure!(g.generators() == gg.generators(), "not idempotent on {:?}", ideal.generators());
        checked += 1;
    }
    Ok(format!("{} scaled fixtures x 5, {} radius triples, 3 forms, {checked} ideals", all.len(), stable.len()))
}

fn criterion_8() -> Outcome {
    let f = foliation_of("exceptional_p3.json");
    let phi = ChernMonomial::c1_squared();
    let base = [(3u32, rat(25, 6)), (2, rat(-1, 2)), (1, rat(9, 2))];
    let h2 = |c: Rational| CohomologyClass::monomial(3, c, 2);
    let g = global_check(&f, &phi, &base).map_err(|e| e.to_string())?;
    ensure!(g.passed, "unperturbed check fails");
    let mut cases = 0;
    for i in 0..base.len() {
        for delta in [rat(1, 1), rat(-1, 7)] {
            let mut pairs = base.to_vec();
            pairs[i].1 += &delta;
            let g = global_check(&f, &phi, &pairs).map_err(|e| e.to_string())?;
            let want = h2(&delta * Rational::from_integer(base[i].0.into()));
            ensure!(!g.passed && g.discrepancy == want, "residue {i} + {delta}: {}", g.discrepancy);
            cases += 1;
        }
        let mut pairs = base.to_vec();
        pairs[i].0 += 1;
        let g = global_check(&f, &phi, &pairs).map_err(|e| e.to_string())?;
        ensure!(!g.passed && g.discrepancy == h2(base[i].1.clone()), "degree {i} + 1: {}", g.discrepancy);
        cases += 1;
    }

    let text = std::fs::read_to_string(fixture("exceptional_p3.json")).unwrap();
    let dir = std::env::temp_dir().join(format!("bbres-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, (_, lambda)) in base.iter().enumerate() {
        let mut json: Value = serde_json::from_str(&text).unwrap();
        let d = json["components"][i]["degree"].as_u64().unwrap();
        json["components"][i]["degree"] = (d + 1).into();
        let path = dir.join(format!("degree{i}.json"));
        std::fs::write(&path, json.to_string()).unwrap();
        let (code, r) = bbres(&["--no-crosscheck", "check", path.to_str().unwrap()]);
        let want = h2(lambda.clone()).to_string();
        ensure!(code == 2 && r["global"]["discrepancy"] == want.as_str(), "cli degree {i}: exit {code}, {}", r["global"]);
        cases += 1;
    }
    std::fs::remove_dir_all(&dir).ok();
    let (code, r) = bbres(&["check", fixture("exceptional_p3_mutated.json").to_str().unwrap()]);
    ensure!(code == 2 && r["global"]["discrepancy"] == "9/2*h^2", "mutated fixture: exit {code}, {}", r["global"]);
    Ok(format!("{} perturbations flip to FAIL with exact discrepancy", cases + 1))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

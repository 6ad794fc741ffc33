//! Subcommand implementations: parse → verify → residues → global check.

use std::collections::BTreeMap;

use bbresidue::cenkl::{decompose, lift, Alphabet, CenklDecomposition, SymPoly};
use bbresidue::chern::global_check;
use bbresidue::foliation::{dehomogenize, dual_vector_field_2d, restrict_to_disc, Coordinates, VectorFieldGerm};
use bbresidue::martinelli::{bm_residue, radius_stability, MartinelliOptions, QuadratureResult, DEFAULT_EVALUATION_BUDGET};
use bbresidue::poly::rat_to_f64;
use bbresidue::residue::{on_component, residue_for_component, ComponentResidue, ResidueNumber};
use bbresidue::singular::{check_genericity, isolated_points_2d, singular_ideal, verify_component, SingularComponent, SingularPoint2D};
use bbresidue::Rational;

use crate::problem::{Component, Problem};
use crate::report::*;
use crate::CliError;

/// Agreement required between the boundary integral and an exact residue.
pub const CROSSCHECK_FLOOR: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Sing,
    Verify,
    Residues,
    Check,
    Bm,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Sing => "sing",
            Stage::Verify => "verify",
            Stage::Residues => "residues",
            Stage::Check => "check",
            Stage::Bm => "bm",
        }
    }
}

fn budgets(problem: &Problem) -> Budgets {
    Budgets {
        groebner_reductions: problem.settings.budget,
        martinelli_tol: problem.settings.tol,
        martinelli_evaluations: DEFAULT_EVALUATION_BUDGET,
    }
}

fn martinelli_options(problem: &Problem) -> MartinelliOptions {
    MartinelliOptions { tol: problem.settings.tol, ..MartinelliOptions::default() }
}

fn disc_report(c: &Component, form: String, field: &VectorFieldGerm, zeros: &[SingularPoint2D]) -> DiscReport {
    let names = c.slice.chart().vars();
    DiscReport {
        free: c.slice.free().iter().map(|&i| names[i].clone()).collect(),
        fixed: c.slice.fixed().iter().map(|(i, v)| (names[*i].clone(), v.to_string())).collect(),
        restricted_form: form,
        field: field.to_string(),
        zeros: zeros
            .iter()
            .map(|s| ZeroReport {
                point: PointReport::of(&s.point),
                multiplicity: s.multiplicity,
                nondegenerate: s.nondegenerate,
                on_component: on_component(&c.z, &c.slice, s),
            })
            .collect(),
    }
}

fn component_shell(c: &Component) -> ComponentReport {
    let chart = c.slice.chart();
    ComponentReport {
        name: c.z.name.clone(),
        degree: c.z.degree,
        chart: chart.name().to_string(),
        verification: None,
        genericity: Vec::new(),
        disc: None,
        residue: None,
        boundary_integral: None,
        status: Status::Pass,
    }
}

fn verify_one(problem: &Problem, c: &Component, others: &[&SingularComponent], out: &mut ComponentReport) -> Result<(), CliError> {
    let affine = dehomogenize(&problem.foliation, c.slice.chart())?;
    let ideal = singular_ideal(&affine)?;
    let v = verify_component(&c.z, &ideal, &problem.settings.groebner())?;
    out.verification = Some(VerificationReport {
        status: Status::from_bool(v.passed),
        witness: v.witness.map(|(generator, residual)| Witness { generator, residual: residual.to_string() }),
        degree_consistent: v.degree_consistent,
    });
    let g = check_genericity(&c.z, &c.center, &c.slice, others)?;
    out.genericity = g
        .checks
        .iter()
        .map(|ch| CheckReport {
            check: ch.name,
            status: Status::from_bool(ch.passed),
            detail: (!ch.passed).then(|| ch.detail.clone()),
        })
        .collect();
    out.status = Status::from_bool(v.passed && g.passed());
    Ok(())
}

/// Radius for the boundary integral around `p`: the configured one, or a
/// fraction of the distance to the nearest other zero.
fn radius_for(problem: &Problem, p: &[Rational], zeros: &[SingularPoint2D]) -> f64 {
    if let Some(r) = problem.settings.radius {
        return r;
    }
    let pf: Vec<f64> = p.iter().map(rat_to_f64).collect();
    let mut nearest = f64::INFINITY;
    for z in zeros {
        let d = match &z.point.coords {
            Coordinates::Exact(q) if q == p => continue,
            Coordinates::Exact(q) => q.iter().zip(&pf).map(|(a, b)| (rat_to_f64(a) - b).powi(2)).sum::<f64>().sqrt(),
            Coordinates::Numeric { values, .. } => {
                values.iter().zip(&pf).map(|(a, b)| (a.re - b).powi(2) + a.im.powi(2)).sum::<f64>().sqrt()
            }
        };
        nearest = nearest.min(d);
    }
    (0.4 * nearest).min(0.5)
}

fn martinelli_report(q: &QuadratureResult, status: Status) -> MartinelliReport {
    MartinelliReport {
        status,
        value: [q.value.re, q.value.im],
        error_bound: q.error_estimate,
        radius: q.radius,
        evaluations: q.evaluations,
    }
}

fn residue_one(problem: &Problem, c: &Component, out: &mut ComponentReport) -> Result<ComponentResidue, CliError> {
    let r = residue_for_component(&problem.foliation, &c.z, &c.center, &c.slice, &problem.phi, &problem.settings.groebner())?;
    let exact = match &r.value.value {
        ResidueNumber::Exact(v) => v.clone(),
        ResidueNumber::Numeric { .. } => unreachable!("component residues are rationalized"),
    };
    let mut status = Status::Pass;
    if let Some(t) = &r.cross_check {
        status = status.and(Status::from_bool(t == &exact));
    }
    let mut martinelli = None;
    if problem.settings.crosscheck {
        if let [pt] = r.center_points.as_slice() {
            if let Some(p) = pt.point.as_exact() {
                let radius = radius_for(problem, p, &r.all_points);
                let q = bm_residue(&r.field, p, &problem.phi, radius, &martinelli_options(problem))?;
                let err = (q.value.re - rat_to_f64(&exact)).abs().max(q.value.im.abs());
                let ok = Status::from_bool(err <= CROSSCHECK_FLOOR.max(q.error_estimate));
                status = status.and(ok);
                martinelli = Some(martinelli_report(&q, ok));
            }
        }
    }
    out.residue = Some(ResidueReport {
        value: exact.to_string(),
        method: r.value.method.as_str(),
        top_class: r.value.top_class,
        point: r.center_points.iter().map(|s| PointReport::of(&s.point)).collect(),
        transformation_law: r.cross_check.as_ref().map(Rational::to_string),
        cluster_values: r.cluster_values.iter().map(|z| [z.re, z.im]).collect(),
        martinelli,
        status,
    });
    out.status = out.status.and(status);
    Ok(r)
}

fn foliation_report(problem: &Problem) -> FoliationReport {
    FoliationReport {
        ambient: problem.foliation.ambient_dim(),
        codim: problem.foliation.codim(),
        twist_degree: problem.foliation.twist_degree().unwrap_or(0),
        phi: problem.phi.to_string(),
    }
}

pub fn run(stage: Stage, problem: &Problem, hash: String) -> Result<Report<PipelineBody>, CliError> {
    let mut components = Vec::new();
    let mut residues: Vec<Option<Rational>> = Vec::new();
    for (i, c) in problem.components.iter().enumerate() {
        let others: Vec<&SingularComponent> =
            problem.components.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| &o.z).collect();
        let mut out = component_shell(c);
        match stage {
            Stage::Sing => sing_one(problem, c, &mut out)?,
            Stage::Bm => bm_one(problem, c, &mut out)?,
            Stage::Verify | Stage::Residues | Stage::Check => {
                verify_one(problem, c, &others, &mut out)?;
                if stage != Stage::Verify && out.status == Status::Pass {
                    let r = residue_one(problem, c, &mut out)?;
                    out.disc = Some(disc_report(c, r.restricted_form.to_string(), &r.field, &r.all_points));
                    residues.push(r.value.exact().cloned());
                } else {
                    residues.push(None);
                }
            }
        }
        components.push(out);
    }
    let mut status = components.iter().fold(Status::Pass, |s, c| s.and(c.status));
    let mut global = None;
    if stage == Stage::Check {
        if residues.iter().all(Option::is_some) {
            let pairs: Vec<(u32, Rational)> =
                problem.components.iter().zip(&residues).map(|(c, r)| (c.z.degree, r.clone().unwrap())).collect();
            let g = global_check(&problem.foliation, &problem.phi, &pairs)?;
            let gs = Status::from_bool(g.passed);
            status = status.and(gs);
            global = Some(GlobalReport {
                phi: problem.phi.to_string(),
                lhs: g.lhs.to_string(),
                rhs: g.rhs.to_string(),
                discrepancy: g.discrepancy.to_string(),
                status: gs,
            });
        } else {
            status = Status::Fail;
        }
    }
    Ok(Report {
        tool: Tool::current(),
        command: stage.name(),
        input_sha256: hash,
        budgets: Some(budgets(problem)),
        body: PipelineBody { foliation: foliation_report(problem), components, global },
        status,
    })
}

fn sing_one(problem: &Problem, c: &Component, out: &mut ComponentReport) -> Result<(), CliError> {
    let affine = dehomogenize(&problem.foliation, c.slice.chart())?;
    let restricted = restrict_to_disc(&affine, &c.slice)?;
    let field = dual_vector_field_2d(&restricted)?;
    let zeros = isolated_points_2d(&field, &problem.settings.groebner())?;
    let disc = disc_report(c, restricted.to_string(), &field, &zeros);
    out.status = Status::from_bool(disc.zeros.iter().any(|z| z.on_component));
    out.disc = Some(disc);
    Ok(())
}

fn bm_one(problem: &Problem, c: &Component, out: &mut ComponentReport) -> Result<(), CliError> {
    let r = residue_for_component(&problem.foliation, &c.z, &c.center, &c.slice, &problem.phi, &problem.settings.groebner())?;
    let p = match r.center_points.as_slice() {
        [pt] => pt.point.as_exact().map(<[Rational]>::to_vec),
        _ => None,
    }
    .ok_or_else(|| bbresidue::Error::Unsupported(format!("{} meets the disc at irrational points", c.z.name)))?;
    let radius = radius_for(problem, &p, &r.all_points);
    let opts = martinelli_options(problem);
    let s = radius_stability(&r.field, &p, &problem.phi, &[radius, 0.75 * radius, 0.5 * radius], &opts)?;
    let imaginary_ok = s.results.iter().all(|q| q.imaginary_ok(opts.tol.max(CROSSCHECK_FLOOR)));
    let status = Status::from_bool(s.passed && imaginary_ok);
    out.disc = Some(disc_report(c, r.restricted_form.to_string(), &r.field, &r.all_points));
    out.boundary_integral = Some(StabilityReport {
        results: s.results.iter().map(|q| martinelli_report(q, Status::from_bool(q.imaginary_ok(opts.tol.max(CROSSCHECK_FLOOR))))).collect(),
        max_deviation: s.max_deviation,
        status,
    });
    out.status = status;
    Ok(())
}

fn decomposition_map(d: &CenklDecomposition) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("phi".to_string(), d.phi.to_string());
    m.insert("phi0".to_string(), d.phi0.to_string());
    for (j, p) in &d.higher {
        m.insert(format!("phi{j}"), p.to_string());
    }
    m
}

pub fn cenkl_decompose(psi: &str, hash: String) -> Result<Report<DecomposeBody>, CliError> {
    let psi = SymPoly::parse(psi, Alphabet::Rho).map_err(|e| CliError::Input { pointer: "--psi".into(), message: e.to_string() })?;
    let d = decompose(&psi)?;
    Ok(Report {
        tool: Tool::current(),
        command: "cenkl-decompose",
        input_sha256: hash,
        budgets: None,
        body: DecomposeBody { psi: psi.to_string(), weight: d.weight, decomposition: decomposition_map(&d) },
        status: Status::Pass,
    })
}

pub fn cenkl_lift(phi: &str, hash: String) -> Result<Report<LiftBody>, CliError> {
    let phi = SymPoly::parse(phi, Alphabet::Sigma).map_err(|e| CliError::Input { pointer: "--phi".into(), message: e.to_string() })?;
    let psi = lift(&phi)?;
    let d = decompose(&psi)?;
    Ok(Report {
        tool: Tool::current(),
        command: "cenkl-lift",
        input_sha256: hash,
        budgets: None,
        status: Status::from_bool(d.phi == phi),
        body: LiftBody { phi: phi.to_string(), psi: psi.to_string(), decomposition: decomposition_map(&d) },
    })
}

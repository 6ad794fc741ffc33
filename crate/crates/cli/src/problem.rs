//! Problem files: JSON schema and conversion into pipeline inputs.

use std::collections::BTreeMap;
use std::str::FromStr;

use bbresidue::foliation::{Chart, DiscSlice, FoliationSpec};
use bbresidue::poly::{parse_poly, vars, vars_from, GroebnerOptions, DEFAULT_STEP_BUDGET};
use bbresidue::residue::ChernMonomial;
use bbresidue::singular::{Center, SingularComponent};
use bbresidue::{MultiPoly, Rational};
use serde::Deserialize;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "bbres-problem/1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub ambient: usize,
    pub codim: usize,
    pub form: FormSpec,
    pub components: Vec<ComponentSpec>,
    /// Exponents of `c_1, …, c_{k+1}`.
    pub phi: Vec<u32>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub variables: Vec<String>,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub name: String,
    pub degree: u32,
    /// Homogeneous variable set to 1.
    pub chart: String,
    #[serde(default)]
    pub affine: Option<Vec<String>>,
    #[serde(default)]
    pub parameter: Option<String>,
    #[serde(default)]
    pub parametrization: Option<Vec<String>>,
    #[serde(default)]
    pub equations: Option<Vec<String>>,
    pub disc: DiscSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscSpec {
    pub fixed: BTreeMap<String, String>,
    pub free: Vec<String>,
    #[serde(default)]
    pub center: CenterSpec,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CenterSpec {
    Parameter(String),
    Point(Vec<String>),
    OnDisc,
}

impl Default for CenterSpec {
    fn default() -> Self {
        CenterSpec::Parameter("1".into())
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub crosscheck: Option<bool>,
    #[serde(default)]
    pub radius: Option<f64>,
}

/// Command-line overrides of the file's options.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub budget: Option<usize>,
    pub no_crosscheck: bool,
    pub radius: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub tol: f64,
    pub budget: usize,
    pub crosscheck: bool,
    pub radius: Option<f64>,
}

impl Settings {
    pub fn groebner(&self) -> GroebnerOptions {
        GroebnerOptions { max_reductions: self.budget }
    }
}

pub struct Component {
    pub z: SingularComponent,
    pub slice: DiscSlice,
    pub center: Center,
}

pub struct Problem {
    pub foliation: FoliationSpec,
    pub components: Vec<Component>,
    pub phi: ChernMonomial,
    pub settings: Settings,
}

fn invalid(pointer: impl Into<String>, message: impl std::fmt::Display) -> CliError {
    CliError::Input { pointer: pointer.into(), message: message.to_string() }
}

fn rational(text: &str, pointer: &str) -> Result<Rational, CliError> {
    Rational::from_str(text.trim()).map_err(|_| invalid(pointer, format!("\"{text}\" is not a rational number p/q")))
}

/// Parses the JSON text; schema errors carry the JSON pointer of the
/// offending value.
pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        let inner = e.into_inner();
        CliError::Schema { pointer, message: inner.to_string() }
    })
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

pub fn build(file: &ProblemFile, overrides: &Overrides) -> Result<Problem, CliError> {
    if let Some(s) = &file.schema {
        if s != SCHEMA_VERSION {
            return Err(invalid("/schema", format!("unsupported schema \"{s}\", expected \"{SCHEMA_VERSION}\"")));
        }
    }
    let settings = Settings {
        tol: overrides.tol.or(file.options.tol).unwrap_or(1e-6),
        budget: overrides.budget.or(file.options.budget).unwrap_or(DEFAULT_STEP_BUDGET),
        crosscheck: !overrides.no_crosscheck && file.options.crosscheck.unwrap_or(true),
        radius: overrides.radius.or(file.options.radius),
    };
    if !(settings.tol > 0.0) {
        return Err(invalid("/options/tol", "tolerance must be positive"));
    }
    if file.form.variables.len() != file.ambient + 1 {
        return Err(invalid(
            "/form/variables",
            format!("P^{} needs {} homogeneous variables", file.ambient, file.ambient + 1),
        ));
    }
    if file.codim != 1 {
        return Err(invalid("/codim", "only codimension-one foliations are supported"));
    }
    let hv = vars_from(file.form.variables.clone());
    let coeffs = file
        .form
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, t)| parse_poly(t, &hv).map_err(|e| invalid(format!("/form/coefficients/{i}"), e)))
        .collect::<Result<Vec<MultiPoly>, _>>()?;
    let foliation = FoliationSpec::from_homogeneous(&hv, coeffs).map_err(|e| invalid("/form", e))?;

    let k = file.codim;
    if file.phi.len() != k + 1 {
        return Err(invalid("/phi", format!("expected {} exponents", k + 1)));
    }
    let phi = ChernMonomial::new(file.phi.clone()).map_err(|e| invalid("/phi", e))?;

    let mut components = Vec::new();
    for (ci, c) in file.components.iter().enumerate() {
        let at = |rest: &str| format!("/components/{ci}{rest}");
        let chart = Chart::by_name(&hv, &c.chart, c.affine.clone()).map_err(|e| invalid(at("/chart"), e))?;
        let z = match (&c.parametrization, &c.equations) {
            (Some(map), None) => {
                let p = c.parameter.clone().unwrap_or_else(|| "s".into());
                let pv = vars(&[p.as_str()]);
                let map = map
                    .iter()
                    .enumerate()
                    .map(|(i, t)| parse_poly(t, &pv).map_err(|e| invalid(at(&format!("/parametrization/{i}")), e)))
                    .collect::<Result<Vec<_>, _>>()?;
                SingularComponent::parametrized(&c.name, c.degree, chart.clone(), &p, map)
                    .map_err(|e| invalid(at("/parametrization"), e))?
            }
            (None, Some(eqs)) => {
                let eqs = eqs
                    .iter()
                    .enumerate()
                    .map(|(i, t)| parse_poly(t, chart.vars()).map_err(|e| invalid(at(&format!("/equations/{i}")), e)))
                    .collect::<Result<Vec<_>, _>>()?;
                SingularComponent::equations(&c.name, c.degree, chart.clone(), eqs).map_err(|e| invalid(at("/equations"), e))?
            }
            _ => return Err(invalid(at(""), "exactly one of \"parametrization\" and \"equations\" is required")),
        };
        if c.disc.free.len() != k + 1 {
            return Err(invalid(at("/disc/free"), format!("a disc needs {} free variables", k + 1)));
        }
        let fixed = c
            .disc
            .fixed
            .iter()
            .map(|(name, v)| Ok((name.as_str(), rational(v, &at(&format!("/disc/fixed/{name}")))?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let free: Vec<&str> = c.disc.free.iter().map(String::as_str).collect();
        let slice = DiscSlice::named(chart, &fixed, &free).map_err(|e| invalid(at("/disc"), e))?;
        let center = match &c.disc.center {
            CenterSpec::Parameter(s) => {
                if c.parametrization.is_none() {
                    return Err(invalid(at("/disc/center"), "a parameter center needs a parametrized component"));
                }
                Center::Parameter(rational(s, &at("/disc/center/parameter"))?)
            }
            CenterSpec::Point(p) => Center::Point(
                p.iter()
                    .enumerate()
                    .map(|(i, s)| rational(s, &at(&format!("/disc/center/point/{i}"))))
                    .collect::<Result<_, _>>()?,
            ),
            CenterSpec::OnDisc => Center::OnDisc,
        };
        components.push(Component { z, slice, center });
    }
    if components.is_empty() {
        return Err(invalid("/components", "at least one component is required"));
    }
    Ok(Problem { foliation, components, phi, settings })
}

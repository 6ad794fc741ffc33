//! Report types. Exact rationals are always serialized as `"p/q"` strings.

use std::collections::BTreeMap;

use bbresidue::foliation::{AffinePoint, Coordinates};
use bbresidue::Rational;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn and(self, other: Status) -> Status {
        Status::from_bool(self == Status::Pass && other == Status::Pass)
    }
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: "bbres", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Debug, Serialize)]
pub struct Budgets {
    pub groebner_reductions: usize,
    pub martinelli_tol: f64,
    pub martinelli_evaluations: usize,
}

#[derive(Debug, Serialize)]
pub struct Report<B: Serialize> {
    pub tool: Tool,
    pub command: &'static str,
    pub input_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budgets: Option<Budgets>,
    #[serde(flatten)]
    pub body: B,
    pub status: Status,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum PointReport {
    Exact(Vec<String>),
    Numeric { numeric: Vec<[f64; 2]>, error: f64 },
}

impl PointReport {
    pub fn of(p: &AffinePoint) -> Self {
        match &p.coords {
            Coordinates::Exact(c) => PointReport::Exact(c.iter().map(Rational::to_string).collect()),
            Coordinates::Numeric { values, error } => {
                PointReport::Numeric { numeric: values.iter().map(|z| [z.re, z.im]).collect(), error: *error }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ZeroReport {
    pub point: PointReport,
    pub multiplicity: usize,
    pub nondegenerate: bool,
    pub on_component: bool,
}

#[derive(Debug, Serialize)]
pub struct DiscReport {
    pub free: Vec<String>,
    pub fixed: BTreeMap<String, String>,
    pub restricted_form: String,
    pub field: String,
    pub zeros: Vec<ZeroReport>,
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub generator: usize,
    pub residual: String,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_consistent: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct MartinelliReport {
    pub status: Status,
    pub value: [f64; 2],
    pub error_bound: f64,
    pub radius: f64,
    pub evaluations: usize,
}

#[derive(Debug, Serialize)]
pub struct ResidueReport {
    pub value: String,
    pub method: &'static str,
    pub top_class: bool,
    pub point: Vec<PointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transformation_law: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cluster_values: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub martinelli: Option<MartinelliReport>,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct ComponentReport {
    pub name: String,
    pub degree: u32,
    pub chart: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub genericity: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc: Option<DiscReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<ResidueReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_integral: Option<StabilityReport>,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct StabilityReport {
    pub results: Vec<MartinelliReport>,
    pub max_deviation: f64,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct GlobalReport {
    pub phi: String,
    pub lhs: String,
    pub rhs: String,
    pub discrepancy: String,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct PipelineBody {
    pub foliation: FoliationReport,
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global: Option<GlobalReport>,
}

#[derive(Debug, Serialize)]
pub struct FoliationReport {
    pub ambient: usize,
    pub codim: usize,
    pub twist_degree: i64,
    pub phi: String,
}

#[derive(Debug, Serialize)]
pub struct DecomposeBody {
    pub psi: String,
    pub weight: u32,
    pub decomposition: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
pub struct LiftBody {
    pub phi: String,
    pub psi: String,
    pub decomposition: BTreeMap<String, String>,
}

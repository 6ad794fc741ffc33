use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable \"{name}\" at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("resource limit exceeded in {stage} (budget {budget})")]
    ResourceLimit { stage: &'static str, budget: usize },

    #[error("not a projective form: Euler contraction is {0}, expected 0")]
    EulerContraction(String),

    #[error("coefficients have unequal degrees {0:?}")]
    UnequalDegrees(Vec<u32>),

    #[error("restricted form vanishes identically: the disc is not transversal")]
    NotTransversal,

    #[error("the zero form has no dual vector field")]
    ZeroForm,

    #[error("zero set is not isolated: {0}")]
    NonIsolated(String),

    #[error("degenerate zero: det JX vanishes at the point")]
    DegeneratePoint,

    #[error("Chern monomial of weighted degree {weight} does not fit matrix size {size}")]
    WeightMismatch { weight: u32, size: usize },

    #[error("genericity check failed: {0}")]
    Genericity(String),

    #[error("disc center {0} is not a zero of the restricted vector field")]
    ComponentMissed(String),

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    #[error("another zero of the field lies within {distance:.3e} of the integration sphere")]
    NearbyZero { distance: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown material `{name}` (available: {})", available.join(", "))]
    UnknownMaterial { name: String, available: Vec<String> },

    #[error("material `{0}` is already registered")]
    DuplicateName(String),

    #[error("invalid material name `{0}`: use letters, digits, `_` or `-`")]
    InvalidName(String),

    #[error("relative permittivity must be a finite number > 0, got {0}")]
    InvalidPermittivity(f64),

    #[error("{what} must be a finite number > 0, got {value}")]
    NonPositiveDimension { what: &'static str, value: f64 },

    #[error("capacitance must be a finite number > 0, got {0}")]
    NonPositiveCapacitance(f64),

    #[error("{what} must be a finite number > 0, got {value}")]
    NonPositiveInput { what: &'static str, value: f64 },

    #[error("mesh has {panels} panels, above the budget of {budget}")]
    MeshBudgetExceeded { panels: usize, budget: usize },

    #[error("boundary-element system is singular: {0}")]
    SingularSystem(String),

    #[error(
        "iterative solve did not converge in {iterations} iterations (relative residual {residual:.3e})"
    )]
    NonConvergedSolve { iterations: usize, residual: f64 },

    #[error("Maxwell matrix entry ({row},{col}) = {value:e} is positive beyond tolerance")]
    SignConventionViolation { row: usize, col: usize, value: f64 },

    #[error("degenerate coupler: C13+C14+C23+C24 = {0:e} (need > 0)")]
    DegenerateCoupler(f64),

    #[error("circuit network is singular at {0} Hz")]
    SingularNetwork(f64),

    #[error("sweep produced no rows")]
    EmptySweep,

    #[error("{figure} needs {needed} data, which the sweep did not produce")]
    MissingStage { figure: &'static str, needed: &'static str },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub(crate) fn require_positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveDimension { what, value })
    }
}

use thiserror::Error;

/// Errors produced by the map, regularizer and analysis operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("argument x = {x} lies outside the open interval (0,1)")]
    Domain { x: f64 },

    #[error("parameter {name} = {value} rejected: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("derivative order {0} unsupported (analytic forms go up to 3)")]
    UnsupportedOrder(u8),

    #[error("cannot parse regularizer spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },

    #[error("inversion did not converge within {iterations} iterations (last x = {last_x})")]
    Convergence { iterations: usize, last_x: f64 },

    #[error("cost slopes must satisfy alpha + beta = 1; got {sum}")]
    Normalization { sum: f64 },

    #[error("invariant interval certification failed after {0} image iterations")]
    Certification(usize),

    #[error("orbit too short: need {need} retained points, have {have}")]
    InsufficientData { need: usize, have: usize },

    #[error("degenerate orbit: {hits} of {total} samples within {tol:e} of a critical point")]
    DegenerateOrbit { hits: usize, total: usize, tol: f64 },

    #[error("lap partition cannot be resolved: points {a} and {b} closer than 1e-14")]
    LapResolution { a: f64, b: f64 },

    #[error("sweep configuration rejected: {0}")]
    SweepConfig(String),

    #[error("sweep task failed at a = {a}, seed {seed}: {source}")]
    SweepTask {
        a: f64,
        seed: String,
        #[source]
        source: Box<Error>,
    },

    #[error("attractor comparison needs exactly two seed labels, dataset has {0}")]
    SeedCount(usize),

    #[error("no bifurcation found: every retained cloud stays within tolerance {tol}")]
    NoBifurcation { tol: f64 },

    #[error("x = {0} is a critical point; the Schwarzian derivative is singular there")]
    CriticalSingularity(f64),
}

/// Short machine-readable code, used by the CLI's diagnostic records.
impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Parameter { .. } => "parameter",
            Error::UnsupportedOrder(_) => "unsupported_order",
            Error::Spec { .. } => "spec",
            Error::Convergence { .. } => "convergence",
            Error::Normalization { .. } => "normalization",
            Error::Certification(_) => "certification",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::DegenerateOrbit { .. } => "degenerate_orbit",
            Error::LapResolution { .. } => "lap_resolution",
            Error::SweepConfig(_) => "sweep_config",
            Error::SweepTask { .. } => "sweep_task",
            Error::SeedCount(_) => "seed_count",
            Error::NoBifurcation { .. } => "no_bifurcation",
            Error::CriticalSingularity(_) => "critical_singularity",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

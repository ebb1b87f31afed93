use thiserror::Error;

use crate::hamiltonian::Family;
use crate::ode::TrajectoryPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("h = {h} is outside the valid range ({lo}, {hi}) of {family}")]
    OutOfRange {
        family: Family,
        h: f64,
        lo: f64,
        hi: f64,
    },

    #[error("quadrature did not converge: estimate {estimate} with error {error_estimate} after {subintervals} subintervals")]
    NoConvergence {
        estimate: f64,
        error_estimate: f64,
        subintervals: usize,
    },

    #[error("at h = {h}: {source}")]
    AtEnergy {
        h: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("step size underflow at t = {t}")]
    StepUnderflow {
        t: f64,
        partial: Vec<TrajectoryPoint>,
    },

    #[error("orbit did not return to the section within t = {t_cap}")]
    NoReturn { t_cap: f64 },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_)
            | Error::Domain(_)
            | Error::OutOfRange { .. }
            | Error::Config { .. } => 2,
            Error::AtEnergy { source, .. } => source.exit_code(),
            Error::Degenerate(_) => 4,
            Error::NoConvergence { .. }
            | Error::StepUnderflow { .. }
            | Error::NoReturn { .. }
            | Error::Io(_)
            | Error::Csv(_) => 3,
        }
    }
}

use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the numerical kernels.
///
/// Domain/pole/range failures are deterministic functions of the inputs;
/// convergence and solver failures carry enough state to diagnose where the
/// iteration stalled.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole error: {0}")]
    Pole(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("{what} did not converge: last iterate {last}, residual {residual:e}")]
    Convergence {
        what: String,
        last: Complex64,
        residual: f64,
    },

    #[error("solver error at v = {location}: {detail}")]
    Solver { location: f64, detail: String },

    #[error("smoothness error: derivative order {order} not available at v = {at}")]
    Smoothness { order: usize, at: f64 },

    #[error("singular Euler factor at p = {p}: {detail}")]
    SingularFactor { p: u64, detail: String },

    #[error("unsupported order {requested} (table holds {max})")]
    UnsupportedOrder { requested: usize, max: usize },

    #[error("resource error: {0}")]
    Resource(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("evaluation-point error: {0}")]
    EvalPoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

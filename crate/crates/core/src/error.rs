use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative method stopped before reaching its tolerance.
    #[error("{op} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// Two independent inversion routes disagree beyond the gate.
    #[error("inversion methods disagree at y={y}: contour={contour}, accelerated={accelerated} (gate {gate:e})")]
    CrossValidation {
        y: f64,
        contour: f64,
        accelerated: f64,
        gate: f64,
    },

    /// Two independent evaluations of the same constant disagree.
    #[error("internal consistency failure in {op}: {first} vs {second}")]
    Consistency { op: &'static str, first: f64, second: f64 },

    /// A series or table could not meet its requested tolerance.
    #[error("{op} reached bound {achieved:e}, requested {requested:e}")]
    Tolerance {
        op: &'static str,
        achieved: f64,
        requested: f64,
    },

    /// The grid is too coarse for the requested radius.
    #[error("radius {radius} below resolution limit {limit} for n={n}")]
    Resolution { radius: f64, limit: f64, n: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("table construction failed: {failed} of {total} nodes rejected")]
    Table { failed: usize, total: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

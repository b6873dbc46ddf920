use thiserror::Error;

/// Failures surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("2F1({a}, {b}; {c}; 1) diverges: c - a - b = {margin} is not positive")]
    Divergent { a: f64, b: f64, c: f64, margin: f64 },

    #[error("logarithmic singularity: c = a + b and x = {x} lies within 1e-8 of 1")]
    LogSingular { x: f64 },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms")]
    SeriesNotConverged { terms: usize },

    #[error("quadrature stalled with estimated error {estimate:e} (target {target:e})")]
    Quadrature { estimate: f64, target: f64 },

    #[error("regime not supported: {0}")]
    RegimeUnsupported(String),

    #[error("no bracketed root for n = {n} on [{lo}, {hi}]: {detail}")]
    Bracketing {
        n: u32,
        lo: f64,
        hi: f64,
        detail: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate field: {0}")]
    DegenerateField(String),

    #[error("orbit from {z0:?} did not return before t = {bound}")]
    NoReturn { z0: (f64, f64), bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

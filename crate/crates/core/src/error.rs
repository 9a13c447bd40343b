use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(Complex64),

    #[error("branch point: {base}^{exponent} is undefined")]
    Branch { base: Complex64, exponent: Complex64 },

    #[error("series did not converge after {terms} terms")]
    Convergence { terms: usize },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("outside the domain of definition: {0}")]
    Domain(String),

    #[error("non-finite input or intermediate value: {0}")]
    NonFinite(&'static str),

    #[error("integrand failed at node {node}: {source}")]
    NodeEvaluation {
        node: Complex64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by the whole pipeline.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The pair (n, a) is outside the Fano range handled by this family.
    #[error("instance (n={n}, a={a}) outside the Fano range: require n >= 1 and 0 <= a <= n")]
    FanoRange { n: u32, a: u32 },

    /// gcd(a, n+1) > 1: the parameterizing curve is reducible and the
    /// univariate reduction does not apply.
    #[error("instance (n={n}, a={a}) rejected: gcd({a}, {m}) = {g} != 1 (reducible case)")]
    Coprimality { n: u32, a: u32, m: u32, g: u32 },

    #[error("ray arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("point has a zero coordinate; Laurent evaluation is undefined there")]
    ZeroCoordinate,

    #[error("n={n} exceeds the oracle guard ({limit}); the direct solver is for small n only")]
    OracleGuard { n: usize, limit: usize },

    #[error("Newton budget of {budget} starts exhausted before any critical point converged")]
    BudgetExhausted { budget: usize },

    #[error("root refinement stalled: worst residual {worst:e} above tolerance {tol:e}")]
    NonConvergence { tol: f64, worst: f64 },

    #[error("parameters outside the supported range: {0}")]
    OutOfRange(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("eigenvalue routine failed: {0}")]
    Eigen(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, WalkError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not unitary: deviation {deviation:e} exceeds tolerance {tol:e}")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("qubit state is not normalized: |alpha|^2 + |beta|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("{0} requires a coin with abcd != 0")]
    DegenerateCoin(&'static str),

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("position {k} is not reachable at time {n}")]
    ParityViolation { n: usize, k: i64 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("x = {x} lies outside the oscillatory window ({lo}, {hi})")]
    OutOfWindow { x: f64, lo: f64, hi: f64 },

    #[error("series did not converge within {0} terms")]
    NonConvergent(usize),

    #[error("c = {0} is a pole of the hypergeometric series")]
    PoleAtC(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

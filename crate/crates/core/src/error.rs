use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e} > tol {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("Bloch vector has norm {norm} > 1")]
    BlochNormExceeded { norm: f64 },

    #[error("invalid site index {site} for {sites} sites")]
    InvalidSite { site: usize, sites: usize },

    #[error("not a valid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("distribution is not TI-consistent (max marginal mismatch {0:.3e})")]
    InconsistentMarginal(f64),

    #[error("invalid domino loop: {0}")]
    InvalidLoop(String),

    #[error("decomposition failed: residual entry {0:.3e} below -1e-9")]
    NegativeResidual(f64),

    #[error("size cap exceeded: {actual} > {cap}")]
    CapExceeded { actual: usize, cap: usize },

    #[error("facet enumeration budget exceeded: {actual} > {budget}")]
    BudgetExceeded { actual: usize, budget: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("linear program is infeasible")]
    LpInfeasible,

    #[error("linear program is unbounded")]
    LpUnbounded,

    #[error("bisection bracket failure: {0}")]
    BracketFailure(String),

    #[error("eigensolver did not converge within {matvecs} matrix applications")]
    Unconverged { matvecs: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

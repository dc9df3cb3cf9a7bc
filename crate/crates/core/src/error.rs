use thiserror::Error;

/// Errors raised by the numerical routines and the input/report parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("aliasing window: {0}")]
    AliasingWindow(String),

    #[error("weight not strictly positive: min sample {min:e} at node {index}")]
    WeightNotPositive { index: usize, min: f64 },

    #[error("degenerate parameter: (a, b) = (0, 0)")]
    DegenerateParameter,

    #[error("not analytic: coefficient at frequency {0} is nonzero")]
    NotAnalytic(i64),

    #[error("kernel pole: |z conj(w)| = {0} >= 1")]
    KernelPole(f64),

    #[error("degenerate weight: Gram matrix is not positive definite")]
    DegenerateWeight,

    #[error("symbol not unimodular: max ||phi| - 1| = {0:e}")]
    SymbolNotUnimodular(f64),

    #[error("empty witness")]
    EmptyWitness,

    #[error("minimax not converged after {iterations} iterations (gap {gap:e})")]
    MinimaxNotConverged { iterations: usize, gap: f64 },

    #[error("boundary zero: factorization ill-conditioned (root modulus {0})")]
    BoundaryZero(f64),

    #[error("symbol not in Neil algebra: |psi'(0)| = {0:e}")]
    NotInNeilAlgebra(f64),

    #[error("element not in the M window: frequency {0}")]
    NotInMWindow(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("report parse error: {0}")]
    ReportParse(String),
}

impl Error {
    /// True for failures of a numerical routine on otherwise valid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateWeight
                | Error::MinimaxNotConverged { .. }
                | Error::BoundaryZero(_)
                | Error::KernelPole(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFiniteMatrix,

    #[error("matrix is not orthogonal within tolerance {tol:e} (max deviation {deviation:e})")]
    NonOrthogonal { deviation: f64, tol: f64 },

    #[error("rank/eigenvalue classification disagree: rank path gives {rank_path}, eigen path gives {eigen_path}")]
    InconsistentClassification {
        rank_path: &'static str,
        eigen_path: &'static str,
    },

    #[error("grid cannot resolve scale {required:e}: spacing {spacing:e} on axis {axis}")]
    Resolution {
        axis: usize,
        spacing: f64,
        required: f64,
    },

    #[error("frequency grid too coarse for lambda={lambda}: {points} points per axis, need at least {required}")]
    FrequencyResolution {
        lambda: f64,
        points: usize,
        required: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("class {0} has no explicit lower-bound construction")]
    UnsupportedClass(&'static str),

    #[error("singular configuration: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("estimated allocation {needed_bytes} bytes exceeds budget {budget_bytes} bytes")]
    MemoryBudget { needed_bytes: u64, budget_bytes: u64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

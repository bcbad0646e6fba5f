use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph spec: {0}")]
    InvalidSpec(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("path {index} is not a simple path of the host graph")]
    PathNotInGraph { index: usize },
    #[error("path {index} uses a color outside the palette")]
    ColorOutOfRange { index: usize },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("path catalog exceeds cap of {cap} paths")]
    CapExceeded { cap: usize },
    #[error("search budget exhausted (no system below size {lower_bound})")]
    BudgetExhausted { lower_bound: usize },
    #[error("base case {0} is infeasible at its size target")]
    InfeasibleAtTarget(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction produced an invalid system: {0}")]
    ConstructionFailed(String),
    #[error("unknown base case {0}")]
    UnknownCase(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

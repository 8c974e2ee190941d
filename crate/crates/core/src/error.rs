use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6 decode error at byte offset {offset}: {reason}")]
    Graph6 { offset: usize, reason: &'static str },

    #[error("json graph decode error: {0}")]
    Json(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("enumeration of {requested} vertices exceeds the budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },

    #[error("Z({d}) is only known to lie in [{lo}, {hi}]; pass assume_conjectures to proceed")]
    UnresolvedZ { d: u64, lo: u64, hi: u64 },

    #[error("infeasible blow-up parameters: {0}")]
    InfeasibleBlowUp(String),

    #[error("witness search failed: {0}")]
    SearchFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

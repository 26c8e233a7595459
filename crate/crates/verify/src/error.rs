use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown statement {id:?}; registered: {}", known.join(", "))]
    UnknownStatement { id: String, known: Vec<String> },
    #[error("step budget of {budget} exhausted at N={n}")]
    BudgetExceeded { n: u64, budget: u64 },
    #[error("invalid range [{lo}, {hi}]")]
    BadRange { lo: u64, hi: u64 },
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("thread pool: {0}")]
    Pool(String),
}

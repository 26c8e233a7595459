use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("zero is outside the domain of the map")]
    Zero,
    #[error("{0} is even; the jump function takes odd input")]
    Even(BigUint),
    #[error("step budget of {budget} exhausted starting from {start}")]
    BudgetExhausted { start: BigUint, budget: u64 },
}

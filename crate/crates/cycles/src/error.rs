use num_bigint::BigUint;
use thiserror::Error;

use crate::Ascendant;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclesError {
    #[error("{0} is not an involved odd number")]
    NotInvolvedOdd(BigUint),
    #[error("only {found} ascendants of {n} with exponent <= {k_max}")]
    KMaxExhausted {
        n: BigUint,
        found: usize,
        k_max: u32,
    },
    #[error("closed-form ascendancy of {n} disagrees with the preimage scan")]
    AscendancyMismatch {
        n: BigUint,
        closed: Vec<Ascendant>,
        brute: Vec<Ascendant>,
    },
    #[error("class must be 1 or 5, got {0}")]
    BadClass(u8),
    #[error("alpha vector must be nonempty with entries >= 1")]
    BadAlphas,
}

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("{0} is not an involved odd number")]
    NotOddInvolved(BigUint),
    #[error("unknown form {0:?}; expected e.g. \"5+6(2+4k)\"")]
    UnknownForm(String),
    #[error("edge {edge} disagrees with direct computation at k={k}")]
    EdgeDisagrees { edge: String, k: u64 },
    #[error("ruler statistics need at least 1000 samples, got {0}")]
    SampleTooSmall(u64),
}

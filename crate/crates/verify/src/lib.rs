//! Per-statement empirical checks and a batch verifier for ranges of starts.

mod batch;
mod census;
mod error;
mod statements;

pub use batch::{
    batch_verify, batch_verify_observed, naive_flight_and_peak, BatchConfig, BatchReport, Cutoff,
    Peak, DEFAULT_CHUNK, DEFAULT_MEMO_CAP,
};
pub use census::{census_csv, flight_census, CensusReport, CensusViolation};
pub use error::VerifyError;
pub use statements::{registered_ids, verify_statement, StatementParams, VerificationReport};

pub type Result<T> = std::result::Result<T, VerifyError>;

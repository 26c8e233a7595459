//! Exact arithmetic kernel for the Syracuse map.
//!
//! Everything here works on arbitrary-precision integers. A few `u128`
//! helpers are exposed for hot loops elsewhere in the workspace; they are
//! checked against the big-integer versions in the test suite.

pub mod dec;
mod error;
mod jump;
mod map;
mod trace;

pub use error::CoreError;
pub use jump::{jcf_closed_form, jcf_expand, jcf_iter, remainder_sum, JcfExpansion};
pub use map::{is_odd_natural, jcf, jcf_u128, ord2, ord2_u128, reversal, step, step_u128};
pub use trace::{syracuse_sequence, SyracuseTrace};

pub use num_bigint::BigUint;
pub use num_rational::BigRational;

/// Default step budget for anything that would otherwise assume a trajectory halts.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

pub type Result<T> = std::result::Result<T, CoreError>;

/// Shorthand used all over the tests and the CLI.
pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

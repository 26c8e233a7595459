//! Ascendancy sets, cycle detection on trajectories, and the rational
//! cycle-equation scanner.

mod ascend;
mod detect;
mod equations;
mod error;

pub use ascend::{ascendancy_bruteforce, ascendancy_checked, ascendancy_closed, Ascendant};
pub use detect::{detect_cycle, minimal_period, reduce, CycleRecord};
pub use equations::{
    claimed_exponent, cycle_equation_n, equation_parts, reconstruct, scan_csv,
    scan_cycle_equations, CycleEquationInstance, ScanHit, ScanReport,
};
pub use error::CyclesError;

pub type Result<T> = std::result::Result<T, CyclesError>;

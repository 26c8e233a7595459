use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::{step, CoreError, Result};

/// Trajectory of one start value, cut at the first 1 or at the budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyracuseTrace {
    #[serde(with = "crate::dec")]
    pub start: BigUint,
    #[serde(with = "crate::dec::vec")]
    pub terms: Vec<BigUint>,
    pub flight_time: u64,
    #[serde(with = "crate::dec")]
    pub max_value: BigUint,
    pub halted: bool,
    pub budget: u64,
}

pub fn syracuse_sequence(n: &BigUint, budget: u64) -> Result<SyracuseTrace> {
    if n == &BigUint::default() {
        return Err(CoreError::Zero);
    }
    let mut terms = vec![n.clone()];
    let mut max_value = n.clone();
    let mut cur = n.clone();
    let mut steps = 0u64;
    while !cur.is_one() && steps < budget {
        cur = step(&cur)?;
        steps += 1;
        if cur > max_value {
            max_value = cur.clone();
        }
        terms.push(cur.clone());
    }
    Ok(SyracuseTrace {
        start: n.clone(),
        flight_time: steps,
        halted: cur.is_one(),
        terms,
        max_value,
        budget,
    })
}

impl SyracuseTrace {
    /// Number of terms, flight time included start.
    pub fn card(&self) -> usize {
        self.terms.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;

    #[test]
    fn thirteen() {
        let t = syracuse_sequence(&big(13), 1000).unwrap();
        let want: Vec<_> = [13u64, 40, 20, 10, 5, 16, 8, 4, 2, 1]
            .iter()
            .map(|&v| big(v))
            .collect();
        assert_eq!(t.terms, want);
        assert_eq!(t.flight_time, 9);
        assert_eq!(t.max_value, big(40));
        assert!(t.halted);
    }

    #[test]
    fn one_is_already_halted() {
        let t = syracuse_sequence(&big(1), 10).unwrap();
        assert_eq!(t.terms, vec![big(1)]);
        assert_eq!(t.flight_time, 0);
        assert!(t.halted);
    }

    #[test]
    fn budget_cuts_without_halting() {
        let t = syracuse_sequence(&big(27), 50).unwrap();
        assert!(!t.halted);
        assert_eq!(t.flight_time, 50);
        assert_eq!(t.terms.len(), 51);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(syracuse_sequence(&big(0), 10), Err(CoreError::Zero));
    }
}

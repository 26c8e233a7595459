use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Result, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CensusViolation {
    /// Trace length exceeds the trace maximum.
    CardAboveMax { n: u64, card: u64, max: u128 },
    /// Some value recurs before 1 is reached.
    Repeat {
        n: u64,
        value: u128,
        first: u64,
        again: u64,
    },
    /// Did not halt within the budget.
    NotHalted { n: u64, budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub lo: u64,
    pub hi: u64,
    /// flight time -> number of starts in range with that flight time
    pub histogram: BTreeMap<u64, u64>,
    pub violations: Vec<CensusViolation>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Full traces of every start in `[lo, hi]`: histogram of flight times, with
/// `Card <= max` and pre-1 distinctness checked along the way.
pub fn flight_census(lo: u64, hi: u64, budget: u64) -> Result<CensusReport> {
    if lo == 0 || hi < lo {
        return Err(VerifyError::BadRange { lo, hi });
    }
    let mut histogram = BTreeMap::new();
    let mut violations = Vec::new();
    let mut seen: HashMap<u128, u64> = HashMap::new();
    for n in lo..=hi {
        seen.clear();
        let mut v = n as u128;
        let mut max = v;
        let mut idx = 0u64;
        let mut halted = true;
        while v != 1 {
            if let Some(&first) = seen.get(&v) {
                violations.push(CensusViolation::Repeat {
                    n,
                    value: v,
                    first,
                    again: idx,
                });
                halted = false;
                break;
            }
            seen.insert(v, idx);
            if idx >= budget {
                violations.push(CensusViolation::NotHalted { n, budget });
                halted = false;
                break;
            }
            v = if v % 2 == 0 { v / 2 } else { 3 * v + 1 };
            max = max.max(v);
            idx += 1;
        }
        if !halted {
            continue;
        }
        let card = idx + 1;
        if card as u128 > max {
            violations.push(CensusViolation::CardAboveMax { n, card, max });
        }
        *histogram.entry(idx).or_insert(0) += 1;
    }
    Ok(CensusReport {
        lo,
        hi,
        histogram,
        violations,
    })
}

pub fn census_csv(report: &CensusReport) -> String {
    let mut out = String::from("lo,hi,flight_time,count\n");
    for (f, c) in &report.histogram {
        let _ = writeln!(out, "{},{},{},{}", report.lo, report.hi, f, c);
    }
    out
}

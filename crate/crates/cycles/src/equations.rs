use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use syracuse_core::{is_odd_natural, jcf_expand, remainder_sum, reversal};
use syracuse_forms::is_involved;

use crate::{CyclesError, Result};

/// Parameters `(class, i, alphas, m)` of one cycle equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleEquationInstance {
    pub class_r: u8,
    pub i: u32,
    pub alphas: Vec<u64>,
    pub m: u32,
}

impl CycleEquationInstance {
    pub fn new(class_r: u8, alphas: Vec<u64>, m: u32) -> Result<Self> {
        if class_r != 1 && class_r != 5 {
            return Err(CyclesError::BadClass(class_r));
        }
        if alphas.is_empty() || alphas.contains(&0) {
            return Err(CyclesError::BadAlphas);
        }
        Ok(CycleEquationInstance {
            class_r,
            i: alphas.len() as u32,
            alphas,
            m,
        })
    }
}

/// Reversal exponent the index `m` stands for: `2m+2` in class 1, `m+1` in class 5.
pub fn claimed_exponent(inst: &CycleEquationInstance) -> u32 {
    if inst.class_r == 1 {
        2 * inst.m + 2
    } else {
        inst.m + 1
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e as usize
}

/// Unreduced `(numerator, denominator)`.
///
/// Class 1: `(2^Σα · Σ_{s<=m} 4^s − 3^i − S) / (6·3^i − 2^(Σα+m+1))`.
/// Class 5: `(5·2^(Σα+m) − 5·3^i − S) / (6·3^i − 3·2^(Σα+m+1))`.
/// `S` is the additive part of the i-fold jump.
pub fn equation_parts(inst: &CycleEquationInstance) -> (BigInt, BigInt) {
    let sa: u64 = inst.alphas.iter().sum();
    let m = inst.m as u64;
    let three_i = BigInt::from(3).pow(inst.i);
    let s = BigInt::from(remainder_sum(&inst.alphas));
    if inst.class_r == 1 {
        let geo = (pow2(2 * m + 2) - 1) / 3;
        let num = pow2(sa) * geo - &three_i - s;
        let den = &three_i * 6 - pow2(sa + m + 1);
        (num, den)
    } else {
        let num = pow2(sa + m) * 5 - &three_i * 5 - s;
        let den = &three_i * 6 - pow2(sa + m + 1) * 3;
        (num, den)
    }
}

pub fn cycle_equation_n(inst: &CycleEquationInstance) -> BigRational {
    let (num, den) = equation_parts(inst);
    BigRational::new(num, den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    pub instance: CycleEquationInstance,
    pub numerator: String,
    pub denominator: String,
    #[serde(with = "syracuse_core::dec")]
    pub n: BigUint,
    /// `class_r + 6n`.
    #[serde(with = "syracuse_core::dec")]
    pub start: BigUint,
    pub genuine: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub i_max: u32,
    pub alpha_sum_max: u64,
    pub m_max: u32,
    pub instances: u64,
    /// All nonnegative integer solutions, genuine or not, sorted by instance.
    pub hits: Vec<ScanHit>,
}

impl ScanReport {
    pub fn genuine(&self) -> impl Iterator<Item = &ScanHit> {
        self.hits.iter().filter(|h| h.genuine)
    }

    pub fn artifacts(&self) -> impl Iterator<Item = &ScanHit> {
        self.hits.iter().filter(|h| !h.genuine)
    }
}

/// True when `N = r + 6n` really closes a cycle as the instance describes:
/// its first `i` valuations are `alphas` and the i-th jump is the preimage
/// `μ_k(N)` for the claimed exponent.
pub fn reconstruct(inst: &CycleEquationInstance, n: &BigUint) -> bool {
    let start = n * 6u32 + inst.class_r;
    if !is_involved(&start).involved {
        return false;
    }
    let Ok(e) = jcf_expand(&start, inst.i as usize) else {
        return false;
    };
    if e.alphas != inst.alphas {
        return false;
    }
    let last = e.last();
    is_odd_natural(&reversal(&start, claimed_exponent(inst))).as_ref() == Some(last)
        && is_involved(last).involved
}

fn compositions(parts: u32, max_sum: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() as u32 == parts {
        out.push(prefix.clone());
        return;
    }
    let used: u64 = prefix.iter().sum();
    let left = (parts - prefix.len() as u32 - 1) as u64;
    let mut a = 1;
    while used + a + left <= max_sum {
        prefix.push(a);
        compositions(parts, max_sum, prefix, out);
        prefix.pop();
        a += 1;
    }
}

/// Every instance with `i <= i_max`, positive alphas summing to at most
/// `alpha_sum_max`, `m <= m_max`, both classes.
pub fn scan_cycle_equations(i_max: u32, alpha_sum_max: u64, m_max: u32) -> ScanReport {
    let mut hits = Vec::new();
    let mut instances = 0u64;
    for class_r in [1u8, 5] {
        for i in 1..=i_max {
            let mut alphas = Vec::new();
            compositions(i, alpha_sum_max, &mut Vec::new(), &mut alphas);
            for a in alphas {
                for m in 0..=m_max {
                    instances += 1;
                    let inst = CycleEquationInstance {
                        class_r,
                        i,
                        alphas: a.clone(),
                        m,
                    };
                    let (num, den) = equation_parts(&inst);
                    debug_assert!(!den.is_zero());
                    let q = BigRational::new(num.clone(), den.clone());
                    if !q.is_integer() || q.numer().sign() == Sign::Minus {
                        continue;
                    }
                    let n = q.numer().to_biguint().expect("nonnegative");
                    let genuine = reconstruct(&inst, &n);
                    hits.push(ScanHit {
                        start: &n * 6u32 + class_r,
                        numerator: num.to_string(),
                        denominator: den.to_string(),
                        n,
                        genuine,
                        instance: inst,
                    });
                }
            }
        }
    }
    hits.sort_by(|a, b| a.instance.cmp(&b.instance));
    ScanReport {
        i_max,
        alpha_sum_max,
        m_max,
        instances,
        hits,
    }
}

pub fn scan_csv(report: &ScanReport) -> String {
    let mut s = String::from("class,i,alphas,m,n_numerator,n_denominator,genuine\n");
    for h in &report.hits {
        let alphas: Vec<String> = h.instance.alphas.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            h.instance.class_r,
            h.instance.i,
            alphas.join(";"),
            h.instance.m,
            h.numerator,
            h.denominator,
            h.genuine
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use syracuse_core::big;

    #[test]
    fn trivial_instance() {
        let inst = CycleEquationInstance::new(1, vec![2], 0).unwrap();
        assert_eq!(cycle_equation_n(&inst), BigRational::zero());
        assert!(reconstruct(&inst, &big(0)));
    }

    #[test]
    fn non_integers() {
        let q = cycle_equation_n(&CycleEquationInstance::new(1, vec![1], 0).unwrap());
        assert!(!q.is_integer());
        let q = cycle_equation_n(&CycleEquationInstance::new(5, vec![1], 1).unwrap());
        assert!(!q.is_integer());
    }

    #[test]
    fn bad_instances() {
        assert_eq!(
            CycleEquationInstance::new(3, vec![1], 0),
            Err(CyclesError::BadClass(3))
        );
        assert_eq!(
            CycleEquationInstance::new(1, vec![], 0),
            Err(CyclesError::BadAlphas)
        );
        assert_eq!(
            CycleEquationInstance::new(1, vec![1, 0], 0),
            Err(CyclesError::BadAlphas)
        );
    }

    #[test]
    fn composition_count() {
        let mut v = Vec::new();
        compositions(3, 6, &mut Vec::new(), &mut v);
        // sum_{s=3..6} C(s-1, 2) = 1 + 3 + 6 + 10
        assert_eq!(v.len(), 20);
    }
}

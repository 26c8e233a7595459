use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::{jcf, CoreError, Result};

/// Record of repeated jumps from an odd start.
///
/// `alphas[p]` is the valuation consumed by jump `p+1`, and `values[p]` the
/// odd value it lands on. `halted` is set when the iteration stopped early at 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JcfExpansion {
    #[serde(with = "crate::dec")]
    pub start: BigUint,
    pub i: usize,
    pub alphas: Vec<u64>,
    #[serde(with = "crate::dec::vec")]
    pub values: Vec<BigUint>,
    pub halted: bool,
}

impl JcfExpansion {
    pub fn last(&self) -> &BigUint {
        self.values.last().unwrap_or(&self.start)
    }

    pub fn alpha_sum(&self) -> u64 {
        self.alphas.iter().sum()
    }
}

/// Up to `i` jumps, stopping once 1 is reached.
///
/// `budget` counts plain map steps (a jump with valuation `a` costs `1 + a`).
/// Running out before either `i` jumps or 1 is an error.
pub fn jcf_iter(n: &BigUint, i: usize, budget: u64) -> Result<JcfExpansion> {
    let mut cur = n.clone();
    let mut alphas = Vec::with_capacity(i.min(256));
    let mut values = Vec::with_capacity(i.min(256));
    let mut spent = 0u64;
    let mut halted = false;
    for _ in 0..i {
        let (next, a) = jcf(&cur)?;
        spent += 1 + a;
        if spent > budget {
            return Err(CoreError::BudgetExhausted {
                start: n.clone(),
                budget,
            });
        }
        alphas.push(a);
        values.push(next.clone());
        cur = next;
        if cur.is_one() {
            halted = true;
            break;
        }
    }
    Ok(JcfExpansion {
        start: n.clone(),
        i: values.len(),
        alphas,
        values,
        halted,
    })
}

/// Exactly `i` jumps with no halting at 1 (1 is a fixed point of the jump).
pub fn jcf_expand(n: &BigUint, i: usize) -> Result<JcfExpansion> {
    let mut cur = n.clone();
    let mut alphas = Vec::with_capacity(i.min(256));
    let mut values = Vec::with_capacity(i.min(256));
    for _ in 0..i {
        let (next, a) = jcf(&cur)?;
        alphas.push(a);
        values.push(next.clone());
        cur = next;
    }
    Ok(JcfExpansion {
        start: n.clone(),
        i,
        alphas,
        values,
        halted: false,
    })
}

/// `sum_{j=0}^{i-1} 3^(i-1-j) * 2^(alpha_1 + .. + alpha_j)`, the additive part
/// of the i-fold jump (empty inner sum for j = 0).
pub fn remainder_sum(alphas: &[u64]) -> BigUint {
    // Horner: S_{i+1} = 3 S_i + 2^(alpha_1 + .. + alpha_i)
    let mut acc = BigUint::default();
    let mut prefix = 0u64;
    for j in 0..alphas.len() {
        if j > 0 {
            prefix += alphas[j - 1];
        }
        acc = acc * 3u32 + (BigUint::one() << prefix as usize);
    }
    acc
}

/// Closed form of the i-fold jump for a prescribed valuation vector.
///
/// Integral exactly when `alphas` is the true valuation prefix of `n`; any
/// other vector still yields a well-defined rational.
pub fn jcf_closed_form(n: &BigUint, alphas: &[u64]) -> BigRational {
    let i = alphas.len() as u32;
    let num = BigUint::from(3u32).pow(i) * n + remainder_sum(alphas);
    let total: u64 = alphas.iter().sum();
    // the denominator is a power of two, so the gcd is too
    let shift = num.trailing_zeros().map_or(total, |tz| tz.min(total));
    let num = num >> shift as usize;
    let den = BigUint::one() << (total - shift) as usize;
    BigRational::new_raw(BigInt::from(num), BigInt::from(den))
}

use serde::{Deserialize, Serialize};

use crate::{FormError, Result};

/// `ord2(4 + 6n)` over involved evens, skipping those whose odd predecessor
/// `(4 + 6n - 1) / 3 = 1 + 2n` is a multiple of 3 (that is `n ≡ 1 mod 3`).
pub fn filtered_ruler() -> impl Iterator<Item = u32> {
    (0u64..)
        .filter(|n| n % 3 != 1)
        .map(|n| (4 + 6 * n).trailing_zeros())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RulerReport {
    pub count: u64,
    pub ord2_one: u64,
    pub ord2_two: u64,
    pub fraction_one: f64,
    pub fraction_two: f64,
    pub prefix: Vec<u32>,
}

pub fn ruler_stats(count: u64) -> Result<RulerReport> {
    if count < 1000 {
        return Err(FormError::SampleTooSmall(count));
    }
    let (mut one, mut two) = (0u64, 0u64);
    let mut prefix = Vec::with_capacity(16);
    for v in filtered_ruler().take(count as usize) {
        if prefix.len() < 16 {
            prefix.push(v);
        }
        match v {
            1 => one += 1,
            2 => two += 1,
            _ => {}
        }
    }
    Ok(RulerReport {
        count,
        ord2_one: one,
        ord2_two: two,
        fraction_one: one as f64 / count as f64,
        fraction_two: two as f64 / count as f64,
        prefix,
    })
}

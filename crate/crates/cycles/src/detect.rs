use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use syracuse_core::step;

/// A cycle reached after `theta` steps, of length `s`, listed from its entry point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub theta: u64,
    pub s: u64,
    #[serde(with = "syracuse_core::dec::vec")]
    pub members: Vec<BigUint>,
}

impl CycleRecord {
    /// Members rotated to start at their minimum.
    pub fn canonical(&self) -> Vec<BigUint> {
        let i = (0..self.members.len())
            .min_by_key(|&i| &self.members[i])
            .unwrap_or(0);
        self.members[i..]
            .iter()
            .chain(&self.members[..i])
            .cloned()
            .collect()
    }

    /// Rotation of {4, 2, 1}.
    pub fn is_trivial(&self) -> bool {
        self.canonical() == [1u32, 4, 2].map(BigUint::from)
    }
}

fn next(x: &BigUint) -> BigUint {
    step(x).expect("nonzero along a trajectory")
}

/// Brent's cycle finder on the map with no halting at 1. `None` when more than
/// `budget` map evaluations would be needed.
pub fn detect_cycle(n: &BigUint, budget: u64) -> Option<CycleRecord> {
    if n.is_zero() {
        return None;
    }
    let mut evals = 1u64;
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = n.clone();
    let mut hare = next(n);
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = next(&hare);
        lam += 1;
        evals += 1;
        if evals > budget {
            return None;
        }
    }

    let mut tortoise = n.clone();
    let mut hare = n.clone();
    for _ in 0..lam {
        hare = next(&hare);
    }
    evals += lam;
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = next(&tortoise);
        hare = next(&hare);
        mu += 1;
        evals += 2;
        if evals > budget {
            return None;
        }
    }

    let mut members = Vec::with_capacity(lam as usize);
    let mut x = tortoise;
    for _ in 0..lam {
        let y = next(&x);
        members.push(x);
        x = y;
    }
    Some(CycleRecord {
        theta: mu,
        s: lam,
        members,
    })
}

/// Smallest `p` dividing `len` with `seq[i] == seq[i % p]`.
pub fn minimal_period<T: PartialEq>(seq: &[T]) -> usize {
    let n = seq.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| seq[i] == seq[i % p]))
        .unwrap_or(n)
}

/// Cuts a repeated block down to one copy.
pub fn reduce<T: PartialEq + Clone>(seq: &[T]) -> Vec<T> {
    seq[..minimal_period(seq)].to_vec()
}

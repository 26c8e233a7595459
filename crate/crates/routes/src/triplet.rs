use std::fmt;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

/// Counts of a-, b- and c-form visits along a route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triplet {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Triplet {
    /// `None` outside `a <= 4, b <= 2, c <= 2, a+b+c >= 1`.
    pub fn new(a: u32, b: u32, c: u32) -> Option<Triplet> {
        (a <= 4 && b <= 2 && c <= 2 && a + b + c >= 1).then_some(Triplet { a, b, c })
    }

    pub fn n(&self) -> u32 {
        self.a + self.b + self.c
    }

    /// Halvings consumed: `a + 2b + 3c`.
    pub fn halvings(&self) -> u32 {
        self.a + 2 * self.b + 3 * self.c
    }
}

impl fmt::Display for Triplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `3^n > 2^(a+2b+3c)`, compared exactly.
pub fn triplet_is_increasing(t: &Triplet) -> bool {
    BigUint::from(3u32).pow(t.n()) > BigUint::from(1u32) << t.halvings() as usize
}

/// The two-decimal threshold: `(a+2b+3c)/n < 1.59`, in integers.
pub fn decimal_test(t: &Triplet) -> bool {
    100 * t.halvings() < 159 * t.n()
}

pub fn triplet_domain() -> Vec<Triplet> {
    let mut v = Vec::new();
    for a in 0..=4 {
        for b in 0..=2 {
            for c in 0..=2 {
                v.extend(Triplet::new(a, b, c));
            }
        }
    }
    v.sort_by_key(|t| (t.n(), std::cmp::Reverse(t.a), std::cmp::Reverse(t.b)));
    v
}

/// Sorted by length, then by decreasing `a`, then decreasing `b`.
pub fn enumerate_increasing_triplets() -> Vec<Triplet> {
    triplet_domain()
        .into_iter()
        .filter(triplet_is_increasing)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(triplet_is_increasing(&Triplet::new(4, 2, 1).unwrap()));
        assert!(!triplet_is_increasing(&Triplet::new(4, 2, 2).unwrap()));
        for n in 1..=4 {
            assert!(triplet_is_increasing(&Triplet::new(n, 0, 0).unwrap()));
        }
        assert!(triplet_is_increasing(&Triplet::new(1, 1, 0).unwrap()));
        assert!(!triplet_is_increasing(&Triplet::new(0, 1, 0).unwrap()));
    }

    #[test]
    fn bounds() {
        assert!(Triplet::new(0, 0, 0).is_none());
        assert!(Triplet::new(5, 0, 0).is_none());
        assert!(Triplet::new(0, 3, 0).is_none());
        assert_eq!(triplet_domain().len(), 5 * 3 * 3 - 1);
    }
}

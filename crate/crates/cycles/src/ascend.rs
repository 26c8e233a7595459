use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use syracuse_core::{is_odd_natural, reversal};
use syracuse_forms::is_involved;

use crate::{CyclesError, Result};

/// An involved odd value whose jump lands on the base with valuation `exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ascendant {
    #[serde(with = "syracuse_core::dec")]
    pub value: BigUint,
    pub exponent: u32,
}

fn check_base(n: &BigUint) -> Result<()> {
    if n.is_even() || (n % 3u32).to_u8() == Some(0) {
        return Err(CyclesError::NotInvolvedOdd(n.clone()));
    }
    Ok(())
}

/// First `count` involved odd preimages `(2^k n - 1)/3`, by increasing `k <= k_max`.
pub fn ascendancy_bruteforce(n: &BigUint, count: usize, k_max: u32) -> Result<Vec<Ascendant>> {
    check_base(n)?;
    let mut out = Vec::with_capacity(count);
    for k in 1..=k_max {
        if out.len() == count {
            break;
        }
        if let Some(v) = is_odd_natural(&reversal(n, k)) {
            if is_involved(&v).involved {
                out.push(Ascendant {
                    value: v,
                    exponent: k,
                });
            }
        }
    }
    if out.len() < count {
        return Err(CyclesError::KMaxExhausted {
            n: n.clone(),
            found: out.len(),
            k_max,
        });
    }
    Ok(out)
}

/// The same list generated from residue conditions, with no divisibility tests.
///
/// For `n = 1 + 6ν` the candidates are `sum_{p<=m} 4^p + 2^(2m+3) ν` with
/// exponent `2m+2`, kept unless `ν ≡ m+1 (mod 3)`. For `n = 5 + 6ν` they are
/// `(5·2^(m+1) - 1)/3 + 2^(m+2) ν` for even `m`, exponent `m+1`, kept unless
/// `ν ≡ m (mod 3)`.
pub fn ascendancy_closed(n: &BigUint, count: usize) -> Result<Vec<Ascendant>> {
    check_base(n)?;
    let r = (n % 6u32).to_u8().expect("< 6");
    let nu = (n - r) / 6u32;
    let eps_n = (&nu % 3u32).to_u64().expect("< 3");
    let mut out = Vec::with_capacity(count);
    let mut m: u64 = 0;
    // geometric sum 1 + 4 + .. + 4^m, carried along
    let mut geo = BigUint::one();
    while out.len() < count {
        if r == 1 {
            if eps_n != (m + 1) % 3 {
                let value = &geo + (&nu << (2 * m + 3) as usize);
                out.push(Ascendant {
                    value,
                    exponent: (2 * m + 2) as u32,
                });
            }
            m += 1;
            geo = geo * 4u32 + 1u32;
        } else {
            if eps_n != m % 3 {
                let head = ((BigUint::from(5u32) << (m + 1) as usize) - 1u32) / 3u32;
                let value = head + (&nu << (m + 2) as usize);
                out.push(Ascendant {
                    value,
                    exponent: (m + 1) as u32,
                });
            }
            m += 2;
        }
    }
    Ok(out)
}

/// Closed form, cross-checked against the preimage scan.
pub fn ascendancy_checked(n: &BigUint, count: usize, k_max: u32) -> Result<Vec<Ascendant>> {
    let closed = ascendancy_closed(n, count)?;
    let brute = ascendancy_bruteforce(n, count, k_max)?;
    if closed != brute {
        return Err(CyclesError::AscendancyMismatch {
            n: n.clone(),
            closed,
            brute,
        });
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use syracuse_core::big;

    fn values(v: &[Ascendant]) -> Vec<BigUint> {
        v.iter().map(|a| a.value.clone()).collect()
    }

    #[test]
    fn five() {
        let b = ascendancy_bruteforce(&big(5), 2, 30).unwrap();
        assert_eq!(values(&b), vec![big(13), big(53)]);
        assert_eq!(b[0].exponent, 3);
        assert_eq!(ascendancy_closed(&big(5), 2).unwrap(), b);
    }

    #[test]
    fn one() {
        let b = ascendancy_bruteforce(&big(1), 3, 30).unwrap();
        assert_eq!(values(&b), vec![big(1), big(5), big(85)]);
        assert_eq!(ascendancy_closed(&big(1), 3).unwrap(), b);
    }

    #[test]
    fn seventeen() {
        let b = ascendancy_bruteforce(&big(17), 1, 30).unwrap();
        assert_eq!(
            b,
            vec![Ascendant {
                value: big(11),
                exponent: 1
            }]
        );
    }

    #[test]
    fn seven() {
        assert_eq!(
            ascendancy_closed(&big(7), 3).unwrap(),
            ascendancy_bruteforce(&big(7), 3, 40).unwrap()
        );
    }

    #[test]
    fn rejects() {
        assert!(matches!(
            ascendancy_bruteforce(&big(9), 1, 30),
            Err(CyclesError::NotInvolvedOdd(_))
        ));
        assert!(matches!(
            ascendancy_closed(&big(8), 1),
            Err(CyclesError::NotInvolvedOdd(_))
        ));
        assert!(matches!(
            ascendancy_bruteforce(&big(5), 10, 5),
            Err(CyclesError::KMaxExhausted { found: 2, .. })
        ));
    }
}

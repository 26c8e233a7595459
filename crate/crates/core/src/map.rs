use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{CoreError, Result};

/// 2-adic valuation.
pub fn ord2(n: &BigUint) -> Result<u64> {
    n.trailing_zeros().ok_or(CoreError::Zero)
}

pub fn ord2_u128(n: u128) -> Option<u32> {
    (n != 0).then(|| n.trailing_zeros())
}

/// One application of the map. `step(1) == 4`: halting is not the map's business.
pub fn step(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(CoreError::Zero);
    }
    Ok(if n.is_odd() { n * 3u32 + 1u32 } else { n >> 1 })
}

/// `None` on zero input or overflow.
#[inline]
pub fn step_u128(n: u128) -> Option<u128> {
    if n == 0 {
        None
    } else if n & 1 == 1 {
        n.checked_mul(3)?.checked_add(1)
    } else {
        Some(n >> 1)
    }
}

/// Odd-to-odd jump: `(3n+1) / 2^alpha` with `alpha = ord2(3n+1)`.
pub fn jcf(n: &BigUint) -> Result<(BigUint, u64)> {
    if n.is_zero() {
        return Err(CoreError::Zero);
    }
    if n.is_even() {
        return Err(CoreError::Even(n.clone()));
    }
    let up = n * 3u32 + 1u32;
    let alpha = up.trailing_zeros().expect("3n+1 > 0");
    Ok((up >> alpha, alpha))
}

/// `None` on even/zero input or overflow.
#[inline]
pub fn jcf_u128(n: u128) -> Option<(u128, u32)> {
    if n & 1 == 0 {
        return None;
    }
    let up = n.checked_mul(3)?.checked_add(1)?;
    let alpha = up.trailing_zeros();
    Some((up >> alpha, alpha))
}

/// Candidate preimage `(2^k n - 1) / 3`, exact.
pub fn reversal(n: &BigUint, k: u32) -> BigRational {
    let num = BigInt::from(n << k as usize) - 1;
    BigRational::new(num, BigInt::from(3))
}

/// The value as a `BigUint` when it is an odd positive integer.
pub fn is_odd_natural(q: &BigRational) -> Option<BigUint> {
    if !q.is_integer() || !q.is_positive() {
        return None;
    }
    let v = q.numer().to_biguint()?;
    v.is_odd().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;

    #[test]
    fn ord2_examples() {
        assert_eq!(ord2(&big(40)), Ok(3));
        assert_eq!(ord2(&big(1)), Ok(0));
        assert_eq!(ord2(&big(1024)), Ok(10));
        assert_eq!(ord2(&big(0)), Err(CoreError::Zero));
        assert_eq!(ord2_u128(0), None);
    }

    #[test]
    fn step_examples() {
        assert_eq!(step(&big(13)), Ok(big(40)));
        assert_eq!(step(&big(40)), Ok(big(20)));
        assert_eq!(step(&big(1)), Ok(big(4)));
        assert_eq!(step(&big(0)), Err(CoreError::Zero));
        assert_eq!(step_u128(u128::MAX), None);
    }

    #[test]
    fn jcf_examples() {
        assert_eq!(jcf(&big(41)), Ok((big(31), 2)));
        assert_eq!(jcf(&big(13)), Ok((big(5), 3)));
        assert_eq!(jcf(&big(1)), Ok((big(1), 2)));
        assert_eq!(jcf(&big(8)), Err(CoreError::Even(big(8))));
        assert_eq!(jcf_u128(13), Some((5, 3)));
    }

    #[test]
    fn reversal_examples() {
        let r = reversal(&big(17), 1);
        assert_eq!(is_odd_natural(&r), Some(big(11)));
        let r = reversal(&big(17), 2);
        assert_eq!(r.to_string(), "67/3");
        assert_eq!(is_odd_natural(&r), None);
        assert_eq!(is_odd_natural(&reversal(&big(13), 2)), Some(big(17)));
    }
}

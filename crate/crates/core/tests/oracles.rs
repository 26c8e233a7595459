//! Kernel checked against plain u64 iteration written independently here.

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use syracuse_core::*;

fn naive_next(n: u64) -> u64 {
    if n % 2 == 1 {
        3 * n + 1
    } else {
        n / 2
    }
}

fn naive_trace(n: u64) -> Vec<u64> {
    let mut v = vec![n];
    let mut c = n;
    while c != 1 {
        c = naive_next(c);
        v.push(c);
    }
    v
}

/// Odd terms after the start, read off the naive trace.
fn naive_odd_hops(n: u64) -> Vec<(u64, u64)> {
    let t = naive_trace(n);
    let mut out = Vec::new();
    let mut evens = 0;
    for w in t.windows(2) {
        if w[0] % 2 == 1 {
            evens = 0;
        } else {
            evens += 1;
        }
        if w[1] % 2 == 1 {
            out.push((w[1], evens));
        }
    }
    out
}

#[test]
fn twenty_seven() {
    let t = syracuse_sequence(&big(27), DEFAULT_BUDGET).unwrap();
    assert_eq!(t.flight_time, 111);
    assert_eq!(t.max_value, big(9232));
    let naive = naive_trace(27);
    assert_eq!(t.flight_time as usize, naive.len() - 1);
    assert_eq!(t.max_value, big(*naive.iter().max().unwrap()));
}

#[test]
fn twenty_seven_jumps() {
    let hops = naive_odd_hops(27);
    assert_eq!(hops.len(), 41);
    let e = jcf_iter(&big(27), 41, DEFAULT_BUDGET).unwrap();
    assert_eq!(e.last(), &big(1));
    assert!(e.halted);
    let alphas: Vec<u64> = hops.iter().map(|h| h.1).collect();
    assert_eq!(e.alphas, alphas);
}

#[test]
fn jump_matches_plain_steps() {
    for n in (1u64..20_000).step_by(2) {
        let (v, a) = jcf(&big(n)).unwrap();
        let mut c = big(n);
        for _ in 0..=a {
            c = step(&c).unwrap();
        }
        assert_eq!(c, v, "n={n}");
        assert!(v.bit(0));
    }
}

#[test]
fn closed_form_on_true_prefixes() {
    for n in (1u64..20_000).step_by(2).filter(|n| n % 3 != 0) {
        let e = jcf_iter(&big(n), usize::MAX, DEFAULT_BUDGET).unwrap();
        for p in 1..=e.i {
            let cf = jcf_closed_form(&big(n), &e.alphas[..p]);
            assert_eq!(
                cf,
                BigRational::from_integer(e.values[p - 1].clone().into()),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn closed_form_wrong_alpha_is_not_the_jump() {
    let cf = jcf_closed_form(&big(13), &[1]);
    assert!(cf.is_integer());
    assert_eq!(cf, BigRational::from_integer(20.into()));
    assert_ne!(cf, BigRational::from_integer(5.into()));
}

#[test]
fn suffix_property() {
    for n in 1u64..1500 {
        let t = syracuse_sequence(&big(n), DEFAULT_BUDGET).unwrap();
        assert!(t.halted);
        for (j, term) in t.terms.iter().enumerate() {
            let s = syracuse_sequence(term, DEFAULT_BUDGET).unwrap();
            assert_eq!(s.terms[..], t.terms[j..], "n={n} j={j}");
        }
    }
}

#[test]
fn one_appears_once_at_the_end() {
    for n in 1u64..20_000 {
        let t = syracuse_sequence(&big(n), DEFAULT_BUDGET).unwrap();
        let ones = t.terms.iter().filter(|v| **v == big(1)).count();
        assert_eq!(ones, 1);
        assert_eq!(t.terms.last(), Some(&big(1)));
        assert_eq!(t.flight_time as usize, t.terms.len() - 1);
    }
}

#[test]
fn reversal_round_trip() {
    for n in (1u64..5000).step_by(2).filter(|n| n % 3 != 0) {
        for k in 1..=30u32 {
            if let Some(m) = is_odd_natural(&reversal(&big(n), k)) {
                assert_eq!(jcf(&m).unwrap(), (big(n), k as u64), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let t = syracuse_sequence(&big(27), DEFAULT_BUDGET).unwrap();
    let s = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<SyracuseTrace>(&s).unwrap(), t);
    let e = jcf_iter(&big(27), 10, DEFAULT_BUDGET).unwrap();
    let s = serde_json::to_string(&e).unwrap();
    assert_eq!(serde_json::from_str::<JcfExpansion>(&s).unwrap(), e);
}

proptest! {
    #[test]
    fn remainder_identity_is_positive(n in (0u64..1_000_000).prop_map(|x| 2 * x + 1), i in 1usize..12) {
        let e = jcf_expand(&big(n), i).unwrap();
        let lhs = e.last() << e.alpha_sum() as usize;
        let rhs = BigUint::from(3u32).pow(i as u32) * big(n);
        prop_assert!(lhs > rhs);
        prop_assert_eq!(lhs - rhs, remainder_sum(&e.alphas));
    }

    #[test]
    fn fast_paths_agree(n in 1u128..(1u128 << 100)) {
        let b = BigUint::from(n);
        prop_assert_eq!(step_u128(n).map(BigUint::from), Some(step(&b).unwrap()));
        prop_assert_eq!(ord2_u128(n).map(u64::from), Some(ord2(&b).unwrap()));
        if n % 2 == 1 {
            let (v, a) = jcf_u128(n).unwrap();
            prop_assert_eq!((BigUint::from(v), a as u64), jcf(&b).unwrap());
        }
    }

    #[test]
    fn closed_form_random(n in (0u64..1_000_000_000).prop_map(|x| 2 * x + 1)) {
        let e = jcf_expand(&big(n), 8).unwrap();
        for p in 1..=8 {
            let cf = jcf_closed_form(&big(n), &e.alphas[..p]);
            prop_assert_eq!(cf, BigRational::from_integer(e.values[p - 1].clone().into()));
        }
    }

    #[test]
    fn big_values_step_like_u64(n in 1u64..(1 << 60)) {
        prop_assert_eq!(step(&big(n)).unwrap(), BigUint::from(naive_next(n) as u128));
    }
}

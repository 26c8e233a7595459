use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use syracuse_core::{big, jcf, step, syracuse_sequence, DEFAULT_BUDGET};
use syracuse_cycles::*;

/// Preimage scan in plain u128, independent of the library's rationals.
fn oracle_ascendants(n: u64, count: usize) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    for k in 1..=100u32 {
        if out.len() == count {
            break;
        }
        let x = ((n as u128) << k) - 1;
        if x % 3 == 0 {
            let v = x / 3;
            if v % 2 == 1 && v % 3 != 0 {
                out.push((v, k));
            }
        }
    }
    out
}

fn as_pairs(v: &[Ascendant]) -> Vec<(u128, u32)> {
    v.iter()
        .map(|a| ((&a.value).try_into().unwrap(), a.exponent))
        .collect()
}

#[test]
fn closed_form_matches_preimage_scan() {
    for n in (1..=5000u64).step_by(2).filter(|n| n % 3 != 0) {
        let closed = ascendancy_closed(&big(n), 10).unwrap();
        assert_eq!(as_pairs(&closed), oracle_ascendants(n, 10), "n={n}");
        ascendancy_checked(&big(n), 10, 64).unwrap();
    }
}

#[test]
fn ascendants_increase_and_jump_back() {
    for n in (1..=500u64).step_by(2).filter(|n| n % 3 != 0) {
        let a = ascendancy_closed(&big(n), 10).unwrap();
        for w in a.windows(2) {
            assert!(w[0].value < w[1].value && w[0].exponent < w[1].exponent);
        }
        for x in &a {
            assert_eq!(jcf(&x.value).unwrap(), (big(n), x.exponent as u64));
        }
    }
}

#[test]
fn predecessor_odd_term_is_an_ascendant() {
    for n in (1..=3000u64).step_by(2) {
        let t = syracuse_sequence(&big(n), DEFAULT_BUDGET).unwrap();
        let odds: Vec<&BigUint> = t.terms.iter().filter(|v| v.bit(0)).collect();
        for w in odds.windows(2) {
            let (prev, cur) = (w[0], w[1]);
            if n % 3 == 0 && prev == &big(n) {
                // a multiple of 3 has no place in anyone's ascendancy
                continue;
            }
            let (_, alpha) = jcf(prev).unwrap();
            let list = ascendancy_bruteforce(cur, 40, 200).unwrap();
            assert!(
                list.iter()
                    .any(|a| &a.value == prev && a.exponent as u64 == alpha),
                "{prev} -> {cur}"
            );
        }
    }
}

#[test]
fn ascendancies_are_disjoint() {
    let mut owner: HashMap<BigUint, u64> = HashMap::new();
    for n in (1..=2000u64).step_by(2).filter(|n| n % 3 != 0) {
        for a in ascendancy_closed(&big(n), 10).unwrap() {
            if let Some(o) = owner.insert(a.value.clone(), n) {
                panic!("{} in both A_{o} and A_{n}", a.value);
            }
        }
    }
}

#[test]
fn non_transitivity_witness() {
    let in_a = |x: u64, n: u64| {
        ascendancy_bruteforce(&big(n), 20, 80)
            .unwrap()
            .iter()
            .any(|a| a.value == big(x))
    };
    assert!(in_a(17, 13));
    assert!(in_a(13, 5));
    assert!(!in_a(17, 5));
}

#[test]
fn detected_cycles_are_trivial_and_minimal() {
    for n in 1..=20_000u64 {
        let c = detect_cycle(&big(n), DEFAULT_BUDGET).unwrap();
        assert!(c.is_trivial(), "n={n}");
        let mut x = c.members[0].clone();
        for j in 1..=c.s {
            x = step(&x).unwrap();
            if j < c.s {
                assert_ne!(x, c.members[0]);
            }
        }
        assert_eq!(x, c.members[0]);
        assert_eq!(minimal_period(&c.members), c.s as usize);
        // theta: first index on the cycle
        let t = syracuse_sequence(&big(n), DEFAULT_BUDGET).unwrap();
        let first = t.terms.iter().position(|v| c.members.contains(v)).unwrap();
        assert_eq!(first as u64, c.theta);
    }
}

#[test]
fn scan_finds_only_the_trivial_cycle() {
    let r = scan_cycle_equations(5, 16, 16);
    let genuine: Vec<&ScanHit> = r.genuine().collect();
    assert!(!genuine.is_empty());
    for h in &genuine {
        assert_eq!(h.start, big(1));
        assert!(h.instance.alphas.iter().all(|&a| a == 2));
        assert_eq!(h.instance.m, 0);
        assert_eq!(h.instance.class_r, 1);
    }
    assert!(r.hits.iter().all(|h| h.instance.class_r == 1));
    assert!(r.genuine().count() + r.artifacts().count() == r.hits.len());
    for h in r.artifacts() {
        assert!(!reconstruct(&h.instance, &h.n));
    }
    let trivial = CycleEquationInstance::new(1, vec![2], 0).unwrap();
    assert!(genuine
        .iter()
        .any(|h| h.instance == trivial && h.n.is_zero()));
}

#[test]
fn csv_shape() {
    let r = scan_cycle_equations(3, 10, 4);
    let csv = scan_csv(&r);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("class,i,alphas,m,n_numerator,n_denominator,genuine")
    );
    for l in lines {
        assert_eq!(l.split(',').count(), 7, "{l}");
    }
}

#[test]
fn json_round_trips() {
    let r = scan_cycle_equations(2, 8, 3);
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<ScanReport>(&s).unwrap(), r);
    let c = detect_cycle(&big(27), DEFAULT_BUDGET).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<CycleRecord>(&s).unwrap(), c);
}

proptest! {
    #[test]
    fn denominators_never_vanish(class in prop_oneof![Just(1u8), Just(5u8)],
                                 alphas in proptest::collection::vec(1u64..20, 1..8), m in 0u32..40) {
        let inst = CycleEquationInstance::new(class, alphas, m).unwrap();
        let (_, den) = equation_parts(&inst);
        prop_assert!(!den.is_zero());
    }

    #[test]
    fn reduce_undoes_repetition(block in proptest::collection::vec(0u8..4, 1..6), reps in 1usize..5) {
        let seq: Vec<u8> = block.iter().cycle().take(block.len() * reps).copied().collect();
        let r = reduce(&seq);
        prop_assert!(block.len() % r.len() == 0);
        prop_assert_eq!(reduce(&block), r);
    }

    #[test]
    fn closed_equals_brute_random(n in (0u64..1u64 << 40).prop_map(|x| 2 * x + 1)) {
        prop_assume!(n % 3 != 0);
        prop_assert_eq!(as_pairs(&ascendancy_closed(&big(n), 6).unwrap()), oracle_ascendants(n, 6));
    }
}

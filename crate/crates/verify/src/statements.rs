use std::collections::HashMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use syracuse_core::{
    big, is_odd_natural, jcf, jcf_closed_form, jcf_iter, jcf_u128, reversal, step,
    syracuse_sequence, BigRational, SyracuseTrace, DEFAULT_BUDGET,
};
use syracuse_cycles::{
    ascendancy_bruteforce, ascendancy_checked, ascendancy_closed, detect_cycle, minimal_period,
    reduce,
};
use syracuse_forms::{is_involved, Form, VariationClass};
use syracuse_routes::{
    enumerate_all_routes, route_witness, triplet_domain, triplet_is_increasing, Route, Triplet,
};

use crate::{census::CensusViolation, flight_census, Result, VerifyError};

/// Range and budget for a statement check. Unset fields take per-statement defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementParams {
    pub range: Option<(u64, u64)>,
    pub budget: u64,
}

impl Default for StatementParams {
    fn default() -> Self {
        StatementParams {
            range: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement_id: String,
    pub parameters: Value,
    pub pass: bool,
    /// Counterexamples on failure, a few confirming instances on success.
    pub witnesses: Vec<Value>,
    pub elapsed_secs: f64,
}

const MAX_WITNESSES: usize = 20;

#[derive(Default)]
struct Outcome {
    fails: Vec<Value>,
    confirms: Vec<Value>,
}

impl Outcome {
    fn fail(&mut self, w: Value) {
        if self.fails.len() < MAX_WITNESSES {
            self.fails.push(w);
        } else if self.fails.len() == MAX_WITNESSES {
            self.fails.push(json!({"truncated": true}));
        }
    }

    fn confirm(&mut self, w: Value) {
        if self.confirms.len() < MAX_WITNESSES {
            self.confirms.push(w);
        }
    }

    fn check(&mut self, ok: bool, w: impl FnOnce() -> Value) {
        if !ok {
            self.fail(w());
        }
    }
}

type Check = fn(u64, u64, u64, &mut Outcome);

struct Entry {
    id: &'static str,
    /// `None` for checks with no range.
    default_range: Option<(u64, u64)>,
    run: Check,
}

const REGISTRY: &[Entry] = &[
    Entry {
        id: "1.1",
        default_range: Some((1, 1000)),
        run: suffix_property,
    },
    Entry {
        id: "1.2",
        default_range: Some((1, 10_000)),
        run: closed_form,
    },
    Entry {
        id: "1.4",
        default_range: Some((1, 10_000)),
        run: preimages_halt,
    },
    Entry {
        id: "1.6",
        default_range: Some((1, 10_000)),
        run: involvement,
    },
    Entry {
        id: "1.7",
        default_range: Some((1, 10_000)),
        run: three_mod_six,
    },
    Entry {
        id: "2.3",
        default_range: None,
        run: triplet_laws,
    },
    Entry {
        id: "2.4",
        default_range: None,
        run: route_bounds,
    },
    Entry {
        id: "2.5",
        default_range: Some((0, 20_000)),
        run: chains_force_routes,
    },
    Entry {
        id: "3.1",
        default_range: Some((1, 2000)),
        run: irreducible_cycles,
    },
    Entry {
        id: "3.2",
        default_range: Some((1, 10_000)),
        run: unique_cycle,
    },
    Entry {
        id: "3.5",
        default_range: Some((1, 2000)),
        run: predecessor_ascends,
    },
    Entry {
        id: "3.6",
        default_range: None,
        run: not_transitive,
    },
    Entry {
        id: "3.7",
        default_range: Some((1, 2000)),
        run: disjoint_ascendancies,
    },
    Entry {
        id: "3.8",
        default_range: Some((1, 5000)),
        run: closed_ascendancy,
    },
    Entry {
        id: "4.1",
        default_range: Some((1, 10_000)),
        run: finite_maximum,
    },
    Entry {
        id: "4.2",
        default_range: Some((1, 10_000)),
        run: no_return,
    },
];

pub fn registered_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

pub fn verify_statement(id: &str, params: &StatementParams) -> Result<VerificationReport> {
    let entry =
        REGISTRY
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| VerifyError::UnknownStatement {
                id: id.to_string(),
                known: registered_ids().into_iter().map(String::from).collect(),
            })?;
    let range = entry.default_range.map(|d| params.range.unwrap_or(d));
    let (lo, hi) = range.unwrap_or((0, 0));
    if range.is_some() && hi < lo {
        return Err(VerifyError::BadRange { lo, hi });
    }
    let t0 = Instant::now();
    let mut out = Outcome::default();
    (entry.run)(lo, hi, params.budget, &mut out);
    let pass = out.fails.is_empty();
    let parameters = match range {
        Some((lo, hi)) => json!({"lo": lo, "hi": hi, "budget": params.budget}),
        None => json!({"budget": params.budget}),
    };
    Ok(VerificationReport {
        statement_id: id.to_string(),
        parameters,
        pass,
        witnesses: if pass { out.confirms } else { out.fails },
        elapsed_secs: t0.elapsed().as_secs_f64(),
    })
}

fn halted_trace(n: u64, budget: u64, out: &mut Outcome) -> Option<SyracuseTrace> {
    match syracuse_sequence(&big(n), budget) {
        Ok(t) if t.halted => Some(t),
        Ok(_) => {
            out.fail(json!({"n": n, "error": "not halted", "budget": budget}));
            None
        }
        Err(e) => {
            out.fail(json!({"n": n, "error": e.to_string()}));
            None
        }
    }
}

fn starts(lo: u64, hi: u64) -> std::ops::RangeInclusive<u64> {
    lo.max(1)..=hi
}

fn suffix_property(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    let mut best = (0, 0);
    for n in starts(lo, hi) {
        let Some(t) = halted_trace(n, budget, out) else {
            continue;
        };
        for j in 1..t.terms.len() {
            let sub = syracuse_sequence(&t.terms[j], budget).ok();
            let ok = sub.as_ref().is_some_and(|s| s.terms[..] == t.terms[j..]);
            out.check(
                ok,
                || json!({"n": n, "index": j, "term": t.terms[j].to_string()}),
            );
        }
        if t.flight_time >= best.1 {
            best = (n, t.flight_time);
        }
    }
    out.confirm(json!({"n": best.0, "flight_time": best.1}));
}

fn closed_form(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    let mut prefixes = 0u64;
    for n in starts(lo, hi).filter(|n| n % 2 == 1 && n % 3 != 0) {
        let e = match jcf_iter(&big(n), usize::MAX, budget) {
            Ok(e) => e,
            Err(err) => {
                out.fail(json!({"n": n, "error": err.to_string()}));
                continue;
            }
        };
        for p in 1..=e.alphas.len() {
            let want = BigRational::from_integer(BigInt::from(e.values[p - 1].clone()));
            let got = jcf_closed_form(&big(n), &e.alphas[..p]);
            out.check(got == want, || json!({"n": n, "prefix": p, "closed_form": got.to_string(), "iterated": want.to_string()}));
            prefixes += 1;
        }
    }
    out.confirm(json!({"prefixes_checked": prefixes}));
}

fn preimages_halt(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    let flight = |x: u64| {
        syracuse_sequence(&big(x), budget)
            .ok()
            .filter(|t| t.halted)
            .map(|t| t.flight_time)
    };
    for n in starts(lo, hi) {
        let Some(f) = flight(n) else {
            out.fail(json!({"n": n, "error": "not halted"}));
            continue;
        };
        let double = flight(2 * n);
        out.check(
            double == Some(f + 1),
            || json!({"n": n, "preimage": 2 * n, "flight": f, "preimage_flight": double}),
        );
        // (n-1)/3 = 1 halts before it ever reaches 4
        if n % 6 == 4 && n > 4 {
            let p = (n - 1) / 3;
            let pf = flight(p);
            out.check(
                pf == Some(f + 1),
                || json!({"n": n, "preimage": p, "flight": f, "preimage_flight": pf}),
            );
        }
    }
    out.confirm(json!({"n": 16, "preimages": [32, 5]}));
}

/// Has a predecessor under the map: `2n` always, and `(n-1)/3` when that is odd.
/// "Involved" asks for the latter, or an odd predecessor along a jump for odd `n`.
fn brute_involved(n: u64) -> bool {
    if n % 2 == 1 {
        (1..=40u32).any(|k| {
            let x = ((n as u128) << k) - 1;
            x % 3 == 0 && (x / 3) % 2 == 1
        })
    } else {
        n >= 4 && (n - 1) % 3 == 0 && ((n - 1) / 3) % 2 == 1
    }
}

fn involvement(lo: u64, hi: u64, _budget: u64, out: &mut Outcome) {
    for n in starts(lo, hi) {
        let got = is_involved(&big(n)).involved;
        out.check(
            got == brute_involved(n),
            || json!({"n": n, "classifier": got}),
        );
        if n % 2 == 1 {
            let img = step(&big(n)).expect("odd");
            out.check(
                &img % 6u32 == big(4),
                || json!({"n": n, "image": img.to_string()}),
            );
        }
    }
    for n in [31u64, 33, 34, 32] {
        out.confirm(json!({"n": n, "involved": is_involved(&big(n)).involved}));
    }
}

fn three_mod_six(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    for n in starts(lo, hi) {
        if n % 6 == 3 {
            out.check(
                !is_involved(&big(n)).involved,
                || json!({"n": n, "classifier": true}),
            );
        }
        let Some(t) = halted_trace(n, budget, out) else {
            continue;
        };
        // once an odd step has happened nothing is a multiple of 3 again
        let first_odd = t.terms.iter().position(|x| x.bit(0));
        if let Some(i) = first_odd {
            for (j, x) in t.terms.iter().enumerate().skip(i + 1) {
                out.check(
                    x % 3u32 != BigUint::default(),
                    || json!({"n": n, "index": j, "term": x.to_string()}),
                );
            }
        }
    }
    out.confirm(json!({"n": 3, "involved": false}));
}

fn triplet_laws(_: u64, _: u64, _: u64, out: &mut Outcome) {
    let inc = |a: i64, b: i64, c: i64| -> Option<bool> {
        let t = Triplet::new(a.try_into().ok()?, b.try_into().ok()?, c.try_into().ok()?)?;
        Some(triplet_is_increasing(&t))
    };
    for t in triplet_domain() {
        let (a, b, c) = (t.a as i64, t.b as i64, t.c as i64);
        let here = triplet_is_increasing(&t);
        for (da, db, dc) in [(1, -1, 0), (1, 0, -1), (0, 1, -1)] {
            if let Some(moved) = inc(a + da, b + db, c + dc) {
                // trading a costlier halving for a cheaper one can only help
                out.check(
                    !here || moved,
                    || json!({"from": t.to_string(), "shift": [da, db, dc]}),
                );
            }
            if let Some(back) = inc(a - da, b - db, c - dc) {
                out.check(
                    here || !back,
                    || json!({"from": t.to_string(), "shift": [-da, -db, -dc]}),
                );
            }
        }
        if t.n() < 4 && t.c > 0 {
            out.check(
                !here,
                || json!({"triplet": t.to_string(), "law": "c-exclusion"}),
            );
        }
    }
    for n in 1..=4 {
        let t = Triplet::new(n, 0, 0).expect("in domain");
        out.check(
            triplet_is_increasing(&t),
            || json!({"triplet": t.to_string()}),
        );
    }
    let count = triplet_domain()
        .iter()
        .filter(|t| triplet_is_increasing(t))
        .count();
    out.confirm(json!({"increasing_triplets": count}));
}

fn route_bounds(_: u64, _: u64, _: u64, out: &mut Outcome) {
    let routes = enumerate_all_routes();
    let a1: Form = Form::new(1, 1).expect("form");
    let b5: Form = Form::new(5, 3).expect("form");
    let mut max_len = 0;
    for r in &routes {
        max_len = max_len.max(r.len());
        out.check(
            r.len() <= 7,
            || json!({"route": r.to_string(), "len": r.len()}),
        );
        out.check(
            r.triplet.c <= 1,
            || json!({"route": r.to_string(), "c": r.triplet.c}),
        );
        let forms = r.forms();
        if forms.contains(&a1) && forms.contains(&b5) {
            let adjacent = r.steps.iter().any(|e| e.from == a1 && e.to == b5);
            out.check(
                adjacent,
                || json!({"route": r.to_string(), "law": "5+6(3+4k) follows 1+6(1+4k)"}),
            );
        }
    }
    for t in triplet_domain().into_iter().filter(|t| t.n() == 8) {
        out.check(
            !triplet_is_increasing(&t),
            || json!({"triplet": t.to_string(), "len": 8}),
        );
    }
    debug_assert_eq!(b5.class(), VariationClass::A);
    out.confirm(json!({"routes": routes.len(), "longest": max_len}));
}

/// Odd values of the form path starting at `anchor` with parameter `k0`, if the
/// jumps follow `route` exactly.
fn follows(route: &Route, k0: u64) -> bool {
    let mut v = route.anchor.value_u64(k0) as u128;
    for e in &route.steps {
        let Some((next, alpha)) = jcf_u128(v) else {
            return false;
        };
        let form = Form::new((next % 6) as u8, ((next % 24) / 6) as u8);
        if form != Some(e.to) || alpha != e.alpha {
            return false;
        }
        v = next;
    }
    true
}

fn chains_force_routes(lo: u64, hi: u64, _budget: u64, out: &mut Outcome) {
    let bound = big(1_000_000);
    for r in enumerate_all_routes() {
        let (m, res) = (
            r.chain.modulus().to_u64().expect("small"),
            r.chain.residue().to_u64().expect("small"),
        );
        let end = hi.min(lo + 3 * m);
        for k0 in lo..end {
            let predicted = k0 % m == res;
            let actual = follows(&r, k0);
            out.check(predicted == actual, || json!({"route": r.to_string(), "k0": k0, "predicted": predicted, "actual": actual}));
        }
        match route_witness(&r, &bound) {
            Some(w) => out.confirm(
                json!({"route": r.to_string(), "n": w.n.to_string(), "k0": w.k0.to_string()}),
            ),
            None => out.fail(
                json!({"route": r.to_string(), "error": "no witness", "bound": bound.to_string()}),
            ),
        }
    }
}

fn irreducible_cycles(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    let rep = [4u32, 2, 1, 4, 2, 1];
    out.check(
        reduce(&rep) == [4, 2, 1],
        || json!({"sequence": rep, "reduced": reduce(&rep)}),
    );
    for n in starts(lo, hi) {
        let Some(c) = detect_cycle(&big(n), budget) else {
            out.fail(json!({"n": n, "error": "no cycle within budget"}));
            continue;
        };
        out.check(
            minimal_period(&c.members) == c.s as usize,
            || json!({"n": n, "s": c.s}),
        );
        let mut x = c.members[0].clone();
        for j in 1..=c.s {
            x = step(&x).expect("nonzero");
            out.check(
                (x == c.members[0]) == (j == c.s),
                || json!({"n": n, "s": c.s, "returned_after": j}),
            );
        }
    }
    out.confirm(json!({"sequence": rep, "reduced": [4, 2, 1]}));
}

fn unique_cycle(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    for n in starts(lo, hi) {
        match detect_cycle(&big(n), budget) {
            Some(c) if c.is_trivial() => {}
            Some(c) => out.fail(json!({"n": n, "cycle": c.canonical().iter().map(|v| v.to_string()).collect::<Vec<_>>()})),
            None => out.fail(json!({"n": n, "error": "no cycle within budget"})),
        }
    }
    out.confirm(json!({"cycle": [1, 4, 2]}));
}

fn predecessor_ascends(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    let mut pairs = 0u64;
    for n in starts(lo, hi).filter(|n| n % 2 == 1) {
        let Some(t) = halted_trace(n, budget, out) else {
            continue;
        };
        let odd: Vec<&BigUint> = t.terms.iter().filter(|x| x.bit(0)).collect();
        for w in odd.windows(2) {
            let (x, y) = (w[0], w[1]);
            // a multiple of 3 is in no ascendancy
            if !is_involved(x).involved {
                continue;
            }
            let (img, alpha) = jcf(x).expect("odd");
            debug_assert_eq!(&img, y);
            let back = is_odd_natural(&reversal(y, alpha as u32));
            out.check(
                back.as_ref() == Some(x),
                || json!({"n": n, "x": x.to_string(), "y": y.to_string(), "alpha": alpha}),
            );
            pairs += 1;
        }
    }
    out.confirm(json!({"pairs_checked": pairs}));
}

fn in_ascendancy(x: &BigUint, of: &BigUint) -> bool {
    (1..=64).any(|k| is_odd_natural(&reversal(of, k)).as_ref() == Some(x))
        && is_involved(x).involved
}

fn not_transitive(_: u64, _: u64, _: u64, out: &mut Outcome) {
    let (x, y, z) = (big(17), big(13), big(5));
    let a = in_ascendancy(&x, &y);
    let b = in_ascendancy(&y, &z);
    let c = in_ascendancy(&x, &z);
    out.check(
        a && b && !c,
        || json!({"triple": [17, 13, 5], "17_in_A13": a, "13_in_A5": b, "17_in_A5": c}),
    );
    let a5 = ascendancy_bruteforce(&z, 2, 30)
        .map(|v| v.iter().map(|a| a.value.to_string()).collect::<Vec<_>>());
    out.check(
        a5.as_deref() == Ok(&["13".to_string(), "53".to_string()][..]),
        || json!({"A5": format!("{a5:?}")}),
    );
    out.confirm(json!({"triple": [17, 13, 5]}));
}

fn involved_odds(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    starts(lo, hi).filter(|n| n % 2 == 1 && n % 3 != 0)
}

fn disjoint_ascendancies(lo: u64, hi: u64, _budget: u64, out: &mut Outcome) {
    let mut owner: HashMap<BigUint, u64> = HashMap::new();
    for n in involved_odds(lo, hi) {
        let list = ascendancy_closed(&big(n), 10).expect("involved odd");
        for a in list {
            if let Some(&prev) = owner.get(&a.value) {
                out.fail(json!({"value": a.value.to_string(), "in_A_of": [prev, n]}));
            } else {
                owner.insert(a.value, n);
            }
        }
    }
    out.confirm(json!({"values": owner.len()}));
}

fn closed_ascendancy(lo: u64, hi: u64, _budget: u64, out: &mut Outcome) {
    let mut checked = 0u64;
    for n in involved_odds(lo, hi) {
        if let Err(e) = ascendancy_checked(&big(n), 10, 128) {
            out.fail(json!({"n": n, "error": e.to_string()}));
        }
        checked += 1;
    }
    let a5: Vec<u64> = ascendancy_closed(&big(5), 2)
        .expect("5 is involved")
        .iter()
        .filter_map(|a| a.value.to_u64())
        .collect();
    out.check(a5 == [13, 53], || json!({"A5": a5}));
    out.confirm(json!({"bases_checked": checked, "A5": a5}));
}

fn census_violations(
    lo: u64,
    hi: u64,
    budget: u64,
    out: &mut Outcome,
    keep: fn(&CensusViolation) -> bool,
) {
    match flight_census(lo.max(1), hi.max(1), budget) {
        Ok(r) => {
            for v in r.violations.iter().filter(|v| keep(v)) {
                out.fail(serde_json::to_value(v).expect("serializable"));
            }
        }
        Err(e) => out.fail(json!({"error": e.to_string()})),
    }
}

fn finite_maximum(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    census_violations(lo, hi, budget, out, |v| {
        !matches!(v, CensusViolation::Repeat { .. })
    });
    if let Ok(t) = syracuse_sequence(&big(13), budget) {
        out.confirm(json!({"n": 13, "card": t.card(), "max": t.max_value.to_string()}));
    }
}

fn no_return(lo: u64, hi: u64, budget: u64, out: &mut Outcome) {
    census_violations(lo, hi, budget, out, |v| {
        !matches!(v, CensusViolation::CardAboveMax { .. })
    });
    out.confirm(json!({"range": [lo, hi], "repeats": 0}));
}

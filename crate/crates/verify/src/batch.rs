use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use syracuse_core::DEFAULT_BUDGET;

use crate::{Result, VerifyError};

pub const DEFAULT_MEMO_CAP: u64 = 1 << 24;
pub const DEFAULT_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cutoff {
    /// Stop once the trajectory falls below its start. Sound because smaller
    /// starts are covered by the same run (or, below `lo`, followed to 1).
    DropBelowStart,
    FullTrace,
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cutoff::DropBelowStart => "drop-below-start",
            Cutoff::FullTrace => "full-trace",
        })
    }
}

impl FromStr for Cutoff {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Cutoff, String> {
        match s {
            "drop-below-start" => Ok(Cutoff::DropBelowStart),
            "full-trace" => Ok(Cutoff::FullTrace),
            _ => Err(format!(
                "unknown cutoff {s:?}; expected drop-below-start or full-trace"
            )),
        }
    }
}

/// Trajectory maximum; `Big` only holds values above `u128::MAX`, so the
/// derived order is the numeric one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Peak {
    Small(u128),
    Big(BigUint),
}

impl Peak {
    pub fn from_big(v: BigUint) -> Peak {
        match v.to_u128() {
            Some(x) => Peak::Small(x),
            None => Peak::Big(v),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Peak::Small(x) => BigUint::from(*x),
            Peak::Big(b) => b.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchConfig {
    pub lo: u64,
    pub hi: u64,
    pub workers: usize,
    pub cutoff: Cutoff,
    pub sieve: bool,
    /// Map steps allowed per start.
    pub budget: u64,
    /// Flight times below this are memoised.
    pub memo_cap: u64,
    pub chunk: u64,
}

impl BatchConfig {
    pub fn new(lo: u64, hi: u64) -> BatchConfig {
        BatchConfig {
            lo,
            hi,
            workers: 1,
            cutoff: Cutoff::DropBelowStart,
            sieve: false,
            budget: DEFAULT_BUDGET,
            memo_cap: DEFAULT_MEMO_CAP,
            chunk: DEFAULT_CHUNK,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub lo: u64,
    pub hi: u64,
    pub verified_count: u64,
    pub max_flight_time: u64,
    pub max_flight_argmax: u64,
    #[serde(with = "syracuse_core::dec")]
    pub max_excursion: BigUint,
    pub max_excursion_argmax: u64,
    /// Starts per second; the only field that depends on scheduling.
    pub throughput: f64,
    pub cutoff: Cutoff,
    pub sieve: bool,
}

impl BatchReport {
    /// Equality on everything but throughput.
    pub fn same_results(&self, o: &BatchReport) -> bool {
        (
            self.lo,
            self.hi,
            self.verified_count,
            self.max_flight_time,
            self.max_flight_argmax,
        ) == (
            o.lo,
            o.hi,
            o.verified_count,
            o.max_flight_time,
            o.max_flight_argmax,
        ) && self.max_excursion == o.max_excursion
            && self.max_excursion_argmax == o.max_excursion_argmax
            && self.cutoff == o.cutoff
            && self.sieve == o.sieve
    }
}

#[derive(Debug, Clone)]
struct Stats {
    count: u64,
    flight: u64,
    flight_arg: u64,
    peak: Peak,
    peak_arg: u64,
}

impl Stats {
    fn empty() -> Stats {
        Stats {
            count: 0,
            flight: 0,
            flight_arg: u64::MAX,
            peak: Peak::Small(0),
            peak_arg: u64::MAX,
        }
    }

    #[inline]
    fn add(&mut self, n: u64, flight: u64, peak: Peak) {
        self.count += 1;
        if flight > self.flight || (flight == self.flight && n < self.flight_arg) {
            self.flight = flight;
            self.flight_arg = n;
        }
        if peak > self.peak || (peak == self.peak && n < self.peak_arg) {
            self.peak = peak;
            self.peak_arg = n;
        }
    }

    fn merge(mut self, o: Stats) -> Stats {
        self.count += o.count;
        if o.flight > self.flight || (o.flight == self.flight && o.flight_arg < self.flight_arg) {
            self.flight = o.flight;
            self.flight_arg = o.flight_arg;
        }
        if o.peak > self.peak || (o.peak == self.peak && o.peak_arg < self.peak_arg) {
            self.peak = o.peak;
            self.peak_arg = o.peak_arg;
        }
        self
    }
}

enum Stop {
    Overflow,
    Budget,
}

/// Runs the map from `v` until it is below `below`. Odd steps and the
/// halvings that follow are taken together.
#[inline(always)]
fn descend(
    v: &mut u128,
    below: u128,
    steps: &mut u64,
    peak: &mut u128,
    budget: u64,
) -> std::result::Result<(), Stop> {
    while *v >= below {
        if *v & 1 == 1 {
            *v = v
                .checked_mul(3)
                .and_then(|x| x.checked_add(1))
                .ok_or(Stop::Overflow)?;
            *steps += 1;
            if *v > *peak {
                *peak = *v;
            }
        }
        let tz = v.trailing_zeros();
        *v >>= tz;
        *steps += tz as u64;
        if *steps > budget {
            return Err(Stop::Budget);
        }
    }
    Ok(())
}

fn descend_big(
    v: &mut BigUint,
    below: &BigUint,
    steps: &mut u64,
    peak: &mut BigUint,
    budget: u64,
) -> bool {
    while &*v >= below {
        if v.is_odd() {
            *v = &*v * 3u32 + 1u32;
            *steps += 1;
            if *v > *peak {
                *peak = v.clone();
            }
        }
        let tz = v.trailing_zeros().expect("nonzero");
        *v >>= tz as usize;
        *steps += tz;
        if *steps > budget {
            return false;
        }
    }
    true
}

type Observer<'a> = dyn Fn(u64, &Peak) + Sync + 'a;

struct Ctx<'a> {
    lo: u64,
    budget: u64,
    memo: &'a [u32],
    cutoff: Cutoff,
    observer: Option<&'a Observer<'a>>,
}

/// Per-start result: flight time and the peak used for the excursion statistic.
struct Single {
    flight: u64,
    peak: Peak,
}

impl Ctx<'_> {
    fn budget_err(&self, n: u64) -> VerifyError {
        VerifyError::BudgetExceeded {
            n,
            budget: self.budget,
        }
    }

    fn observe(&self, n: u64, w: &Peak) {
        if let Some(o) = self.observer {
            o(n, w);
        }
    }

    fn process(&self, n: u64) -> Result<Single> {
        match self.process_fast(n) {
            Ok(r) => Ok(r),
            Err(Stop::Budget) => Err(self.budget_err(n)),
            Err(Stop::Overflow) => self.process_big(n),
        }
    }

    fn process_fast(&self, n: u64) -> std::result::Result<Single, Stop> {
        let mut v = n as u128;
        let mut steps = 0u64;
        let mut peak = v;
        if self.cutoff == Cutoff::FullTrace {
            descend(&mut v, 2, &mut steps, &mut peak, self.budget)?;
            self.observe(n, &Peak::Small(v));
            return Ok(Single {
                flight: steps,
                peak: Peak::Small(peak),
            });
        }
        if n == 1 {
            self.observe(1, &Peak::Small(1));
            return Ok(Single {
                flight: 0,
                peak: Peak::Small(1),
            });
        }
        descend(&mut v, n as u128, &mut steps, &mut peak, self.budget)?;
        self.observe(n, &Peak::Small(v));
        if v < self.lo as u128 {
            // below the range: nothing vouches for it, follow it to 1
            descend(&mut v, 2, &mut steps, &mut peak, self.budget)?;
            return Ok(Single {
                flight: steps,
                peak: Peak::Small(peak),
            });
        }
        let mut scratch = 0u128;
        descend(
            &mut v,
            self.memo.len() as u128,
            &mut steps,
            &mut scratch,
            self.budget,
        )?;
        Ok(Single {
            flight: steps + self.memo[v as usize] as u64,
            peak: Peak::Small(peak),
        })
    }

    /// Same as `process_fast`, for trajectories that leave `u128`.
    fn process_big(&self, n: u64) -> Result<Single> {
        let start = BigUint::from(n);
        let mut v = start.clone();
        let mut steps = 0u64;
        let mut peak = start.clone();
        let two = BigUint::from(2u32);
        let fail = || self.budget_err(n);
        if self.cutoff == Cutoff::FullTrace {
            descend_big(&mut v, &two, &mut steps, &mut peak, self.budget)
                .then_some(())
                .ok_or_else(fail)?;
            self.observe(n, &Peak::from_big(v));
            return Ok(Single {
                flight: steps,
                peak: Peak::from_big(peak),
            });
        }
        if n == 1 {
            self.observe(1, &Peak::Small(1));
            return Ok(Single {
                flight: 0,
                peak: Peak::Small(1),
            });
        }
        descend_big(&mut v, &start, &mut steps, &mut peak, self.budget)
            .then_some(())
            .ok_or_else(fail)?;
        self.observe(n, &Peak::from_big(v.clone()));
        if v < BigUint::from(self.lo) {
            descend_big(&mut v, &two, &mut steps, &mut peak, self.budget)
                .then_some(())
                .ok_or_else(fail)?;
            return Ok(Single {
                flight: steps,
                peak: Peak::from_big(peak),
            });
        }
        let mut scratch = BigUint::one();
        let cap = BigUint::from(self.memo.len());
        descend_big(&mut v, &cap, &mut steps, &mut scratch, self.budget)
            .then_some(())
            .ok_or_else(fail)?;
        let idx = v.to_usize().expect("below memo length");
        Ok(Single {
            flight: steps + self.memo[idx] as u64,
            peak: Peak::from_big(peak),
        })
    }

    /// A sieved even start `n`, from its image `n/2`.
    fn derive_even(&self, n: u64, half: (u64, Option<(u64, Peak)>)) -> Result<Single> {
        let (h, cached) = half;
        let stop = if self.cutoff == Cutoff::FullTrace {
            1
        } else {
            h as u128
        };
        self.observe(n, &Peak::Small(stop));
        let own = Peak::Small(n as u128);
        let need_full_peak = self.cutoff == Cutoff::FullTrace || h < self.lo;
        let (hf, hp) = match cached {
            Some(c) => c,
            None if (h as usize) < self.memo.len() && !need_full_peak => {
                (self.memo[h as usize] as u64, own.clone())
            }
            None => {
                let sub_cut = if need_full_peak {
                    Cutoff::FullTrace
                } else {
                    self.cutoff
                };
                let sub = Ctx {
                    lo: self.lo,
                    budget: self.budget,
                    memo: self.memo,
                    cutoff: sub_cut,
                    observer: None,
                };
                let r = sub.process(h).map_err(|_| self.budget_err(n))?;
                (r.flight, r.peak)
            }
        };
        let peak = if need_full_peak { own.max(hp) } else { own };
        Ok(Single {
            flight: hf + 1,
            peak,
        })
    }
}

#[inline]
fn sieved(n: u64) -> bool {
    n % 2 == 0 && n % 6 != 4
}

fn run_chunk(ctx: &Ctx, start: u64, end: u64, sieve: bool) -> Result<Stats> {
    let mut st = Stats::empty();
    if !sieve {
        for n in start..end {
            let r = ctx.process(n)?;
            st.add(n, r.flight, r.peak);
        }
        return Ok(st);
    }
    // first pass: everything the sieve keeps. Peaks are only needed in full-trace mode.
    let full = ctx.cutoff == Cutoff::FullTrace;
    let len = (end - start) as usize;
    let mut flights = vec![u64::MAX; len];
    let mut peaks = if full {
        vec![Peak::Small(0); len]
    } else {
        Vec::new()
    };
    for n in (start..end).filter(|&n| !sieved(n)) {
        let r = ctx.process(n)?;
        let i = (n - start) as usize;
        flights[i] = r.flight;
        if full {
            peaks[i] = r.peak.clone();
        }
        st.add(n, r.flight, r.peak);
    }
    // second pass: sieved evens from their halves, ascending so halves in the chunk are ready
    for n in (start..end).filter(|&n| sieved(n)) {
        let h = n / 2;
        let cached = if h >= start && flights[(h - start) as usize] != u64::MAX {
            let j = (h - start) as usize;
            match full {
                true => Some((flights[j], peaks[j].clone())),
                false if h >= ctx.lo => Some((flights[j], Peak::Small(n as u128))),
                false => None,
            }
        } else {
            None
        };
        let r = ctx.derive_even(n, (h, cached))?;
        let i = (n - start) as usize;
        flights[i] = r.flight;
        if full {
            peaks[i] = r.peak.clone();
        }
        st.add(n, r.flight, r.peak);
    }
    Ok(st)
}

/// Memo of flight times for `[1, len)`, filled in ascending order with the
/// drop-below-start rule. Also returns statistics for the part inside `[lo, hi]`.
fn build_memo(
    len: u64,
    lo: u64,
    hi: u64,
    budget: u64,
    sieve: bool,
    observer: Option<&Observer>,
) -> Result<(Vec<u32>, Stats)> {
    let mut memo = vec![0u32; len as usize];
    let mut st = Stats::empty();
    for n in 1..len {
        let in_range = n >= lo && n <= hi;
        let ctx = Ctx {
            lo,
            budget,
            memo: &memo[..n as usize],
            cutoff: Cutoff::DropBelowStart,
            observer: if in_range { observer } else { None },
        };
        let r = if n == 1 {
            ctx.observe(1, &Peak::Small(1));
            Single {
                flight: 0,
                peak: Peak::Small(1),
            }
        } else if sieve && sieved(n) {
            let h = n / 2;
            let cached = (h >= lo).then(|| (memo[h as usize] as u64, Peak::Small(n as u128)));
            ctx.derive_even(n, (h, cached))?
        } else {
            memo_step(&ctx, n)?
        };
        memo[n as usize] = u32::try_from(r.flight).expect("flight time fits u32");
        if in_range {
            st.add(n, r.flight, r.peak);
        }
    }
    Ok((memo, st))
}

/// One start during memo construction; the memo covers `[1, n)`.
fn memo_step(ctx: &Ctx, n: u64) -> Result<Single> {
    let mut v = n as u128;
    let mut steps = 0u64;
    let mut peak = v;
    match descend(&mut v, n as u128, &mut steps, &mut peak, ctx.budget) {
        Ok(()) => {}
        Err(Stop::Budget) => return Err(ctx.budget_err(n)),
        Err(Stop::Overflow) => return ctx.process_big(n),
    }
    ctx.observe(n, &Peak::Small(v));
    if v < ctx.lo as u128 {
        let mut tail_steps = 0u64;
        let mut w = v;
        if descend(&mut w, 2, &mut tail_steps, &mut peak, ctx.budget).is_err() {
            return ctx.process_big(n);
        }
    }
    Ok(Single {
        flight: steps + ctx.memo[v as usize] as u64,
        peak: Peak::Small(peak),
    })
}

pub fn batch_verify(config: &BatchConfig) -> Result<BatchReport> {
    batch_verify_observed(config, None)
}

/// As [`batch_verify`], calling `observer(n, w)` once per start with the value
/// `w` where its check stopped (below `n`, or 1 in full-trace mode).
pub fn batch_verify_observed(
    config: &BatchConfig,
    observer: Option<&Observer>,
) -> Result<BatchReport> {
    let BatchConfig {
        lo,
        hi,
        workers,
        cutoff,
        sieve,
        budget,
        memo_cap,
        chunk,
    } = *config;
    if lo == 0 || hi < lo || hi == u64::MAX {
        return Err(VerifyError::BadRange { lo, hi });
    }
    if workers == 0 {
        return Err(VerifyError::NoWorkers);
    }
    let t0 = Instant::now();
    let chunk = chunk.max(1);

    let (memo, head, first) = match cutoff {
        Cutoff::DropBelowStart => {
            let len = memo_cap.max(2).min(hi + 1);
            let (memo, st) = build_memo(len, lo, hi, budget, sieve, observer)?;
            (memo, st, lo.max(len))
        }
        Cutoff::FullTrace => (vec![0u32; 2], Stats::empty(), lo),
    };

    let ctx = Ctx {
        lo,
        budget,
        memo: &memo,
        cutoff,
        observer,
    };
    let n_chunks = if first > hi {
        0
    } else {
        (hi - first) / chunk + 1
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let parts: Vec<Result<Stats>> = pool.install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|i| {
                let s = first + i * chunk;
                let e = (s + chunk).min(hi + 1);
                run_chunk(&ctx, s, e, sieve)
            })
            .collect()
    });
    let mut total = head;
    for p in parts {
        total = total.merge(p?);
    }

    let secs = t0.elapsed().as_secs_f64();
    Ok(BatchReport {
        lo,
        hi,
        verified_count: total.count,
        max_flight_time: total.flight,
        max_flight_argmax: total.flight_arg,
        max_excursion: total.peak.to_biguint(),
        max_excursion_argmax: total.peak_arg,
        throughput: if secs > 0.0 {
            total.count as f64 / secs
        } else {
            f64::INFINITY
        },
        cutoff,
        sieve,
    })
}

/// Step-by-step reference: flight time and maximum of the full trajectory.
pub fn naive_flight_and_peak(n: u64, budget: u64) -> Option<(u64, BigUint)> {
    let t = syracuse_core::syracuse_sequence(&BigUint::from(n), budget).ok()?;
    t.halted.then_some((t.flight_time, t.max_value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_with(memo: &[u32], lo: u64, cutoff: Cutoff) -> Ctx<'_> {
        Ctx {
            lo,
            budget: DEFAULT_BUDGET,
            memo,
            cutoff,
            observer: None,
        }
    }

    #[test]
    fn big_path_matches_fast_path() {
        let (memo, _) = build_memo(1000, 1, 999, DEFAULT_BUDGET, false, None).unwrap();
        for cutoff in [Cutoff::DropBelowStart, Cutoff::FullTrace] {
            for lo in [1, 500, 5000] {
                let ctx = ctx_with(&memo, lo, cutoff);
                for n in (lo.max(2)..lo + 3000).step_by(7) {
                    let Ok(a) = ctx.process_fast(n) else { panic!() };
                    let b = ctx.process_big(n).unwrap();
                    assert_eq!(
                        (a.flight, &a.peak),
                        (b.flight, &b.peak),
                        "n={n} lo={lo} {cutoff}"
                    );
                }
            }
        }
    }

    #[test]
    fn peak_order() {
        assert!(Peak::Small(u128::MAX) < Peak::Big(BigUint::from(u128::MAX) + 1u32));
        assert_eq!(Peak::from_big(BigUint::from(7u32)), Peak::Small(7));
    }

    #[test]
    fn single() {
        let r = batch_verify(&BatchConfig::new(1, 1)).unwrap();
        assert_eq!(
            (r.verified_count, r.max_flight_time, r.max_flight_argmax),
            (1, 0, 1)
        );
        assert_eq!(r.max_excursion, BigUint::from(1u32));
    }

    #[test]
    fn bad_configs() {
        assert!(matches!(
            batch_verify(&BatchConfig::new(0, 5)),
            Err(VerifyError::BadRange { .. })
        ));
        assert!(matches!(
            batch_verify(&BatchConfig::new(5, 4)),
            Err(VerifyError::BadRange { .. })
        ));
        let mut c = BatchConfig::new(1, 5);
        c.workers = 0;
        assert_eq!(batch_verify(&c), Err(VerifyError::NoWorkers));
    }

    #[test]
    fn budget_is_a_hard_error() {
        let mut c = BatchConfig::new(20, 30);
        c.budget = 50;
        // 27 needs more than 50 steps to drop below itself
        assert_eq!(
            batch_verify(&c),
            Err(VerifyError::BudgetExceeded { n: 27, budget: 50 })
        );
    }
}

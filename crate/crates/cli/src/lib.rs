//! Command-line front end. `run` does all the work and returns what would be
//! printed, so the binary is a thin wrapper and tests can call it directly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use syracuse_core::{jcf_closed_form, jcf_expand, syracuse_sequence, CoreError, DEFAULT_BUDGET};
use syracuse_cycles::{ascendancy_bruteforce, ascendancy_closed, scan_csv, scan_cycle_equations};
use syracuse_forms::{
    classify, construction_report, form_graph, graph_dot, is_involved, ruler_stats, Classification,
    Form,
};
use syracuse_routes::{
    catalog_report, enumerate_all_routes, enumerate_increasing_routes,
    enumerate_increasing_triplets, route_dot, route_witness, CongruenceChain, Route,
};
use syracuse_verify::{
    batch_verify, census_csv, flight_census, verify_statement, BatchConfig, Cutoff,
    StatementParams, VerifyError, DEFAULT_CHUNK, DEFAULT_MEMO_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

/// Inclusive range written `LO..HI`; bounds accept `1e8` style powers of ten.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let s = s.replace('_', "");
    let bad = || format!("not a nonnegative integer: {s:?}");
    match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m: u64 = m.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            10u64
                .checked_pow(e)
                .and_then(|p| p.checked_mul(m))
                .ok_or_else(bad)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Range, String> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
        let (lo, hi) = (parse_u64(lo)?, parse_u64(hi)?);
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Range { lo, hi })
    }
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal integer: {s:?}"));
    }
    s.parse()
        .map_err(|_| format!("not a decimal integer: {s:?}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "syracuse",
    version,
    about = "Exact tools for the Syracuse (3x+1) map"
)]
pub struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Map steps allowed per start before giving up.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true, value_parser = parse_u64)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full trajectory of N down to 1.
    Seq {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// Repeated odd-to-odd jumps (3N+1)/2^α.
    Eta {
        #[arg(value_parser = parse_big)]
        n: BigUint,
        #[arg(long, default_value_t = 1)]
        iters: usize,
    },
    /// Closed form of the jump composition for a given α-vector.
    ClosedForm {
        #[arg(value_parser = parse_big)]
        n: BigUint,
        /// Comma-separated valuations α₁..αᵢ.
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<u64>,
    },
    /// First involved odd preimages (2^k N - 1)/3.
    Ascend {
        #[arg(value_parser = parse_big)]
        n: BigUint,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Use the residue-class generator instead of scanning k.
        #[arg(long)]
        closed: bool,
        /// Largest k scanned by the preimage search.
        #[arg(long, default_value_t = 256)]
        k_max: u32,
    },
    /// Whether N has a predecessor reachable by an odd step.
    Involved {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// Odd form r+6(q+4k) of N, or its class mod 6.
    Form {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// The 24-edge graph over the eight odd forms.
    Graph {
        /// Same as --format dot.
        #[arg(long)]
        dot: bool,
        /// Construction report: validation and disagreements with the printed tables.
        #[arg(long)]
        report: bool,
        #[arg(long, default_value_t = 1000, value_parser = parse_u64)]
        k_max: u64,
    },
    /// Increasing (a,b,c) triplets.
    Triplets,
    /// Increasing closed routes through an anchor form (all anchors if omitted).
    Routes {
        #[arg(long)]
        anchor: Option<Form>,
        /// Compare against the reference catalog.
        #[arg(long)]
        report: bool,
    },
    /// Smallest start realizing a route, given as its forms with the anchor repeated last.
    RouteWitness {
        #[arg(required = true, num_args = 2..)]
        forms: Vec<Form>,
        #[arg(long, default_value = "1000000000000", value_parser = parse_big)]
        bound: BigUint,
    },
    /// Rational cycle-equation scan, with reconstruction of every integer hit.
    Equations {
        #[arg(long, default_value_t = 5)]
        i_max: u32,
        #[arg(long, default_value_t = 16)]
        alpha_max: u64,
        #[arg(long, default_value_t = 16)]
        m_max: u32,
    },
    /// Run one registered statement check.
    Verify {
        #[arg(long)]
        statement: String,
        #[arg(long)]
        range: Option<Range>,
    },
    /// Check every start in a range reaches 1, with flight and excursion records.
    Batch {
        #[arg(long)]
        range: Range,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value = "drop-below-start")]
        cutoff: Cutoff,
        /// Derive evens that are 0 or 2 mod 6 from their halves.
        #[arg(long)]
        sieve: bool,
        #[arg(long, default_value_t = DEFAULT_MEMO_CAP, value_parser = parse_u64)]
        memo_cap: u64,
        #[arg(long, default_value_t = DEFAULT_CHUNK, value_parser = parse_u64)]
        chunk: u64,
    },
    /// Flight-time histogram with the Card <= max and distinctness checks.
    Census {
        #[arg(long)]
        range: Range,
    },
    /// ord2 statistics of the filtered involved evens 4+6n.
    Ruler {
        #[arg(long, default_value_t = 100_000, value_parser = parse_u64)]
        count: u64,
    },
    /// Random congruence chains: closed-form k₀ against sequential substitution.
    ChainFuzz {
        #[arg(long, default_value_t = 1000)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    /// Verification failed: partial stdout plus witnesses for stderr.
    Check {
        stdout: String,
        witnesses: Value,
    },
}

type Res = Result<String, Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

pub fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `key: value` lines for a flat JSON object.
fn text_lines(v: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(m) = v {
        for (k, v) in m {
            let v = match v {
                Value::String(x) => x.clone(),
                x => x.to_string(),
            };
            let _ = writeln!(s, "{k}: {v}");
        }
    }
    s
}

fn unsupported(cmd: &str, f: Format) -> Failure {
    usage(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn core_err(e: CoreError) -> Failure {
    match e {
        CoreError::BudgetExhausted { start, budget } => Failure::Check {
            stdout: String::new(),
            witnesses: json!({"n": start.to_string(), "budget": budget, "error": "budget exhausted"}),
        },
        e => usage(e),
    }
}

fn verify_err(e: VerifyError) -> Failure {
    match e {
        VerifyError::BudgetExceeded { n, budget } => Failure::Check {
            stdout: String::new(),
            witnesses: json!({"n": n, "budget": budget, "error": "budget exhausted"}),
        },
        e => usage(e),
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    dispatch(&cli)
}

/// Runs a parsed command; exit code 0 on success, 1 on a failed check, 2 on bad input.
pub fn dispatch(cli: &Cli) -> Output {
    match execute(cli) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Check { stdout, witnesses }) => Output {
            code: 1,
            stdout,
            stderr: to_json(&witnesses),
        },
    }
}

fn execute(cli: &Cli) -> Res {
    let f = cli.format;
    let budget = cli.budget;
    match &cli.command {
        Command::Seq { n } => {
            let t = syracuse_sequence(n, budget).map_err(core_err)?;
            if !t.halted {
                return Err(Failure::Check {
                    stdout: String::new(),
                    witnesses: json!({"n": n.to_string(), "budget": budget, "error": "not halted"}),
                });
            }
            match f {
                Format::Text => Ok(join_line(t.terms.iter())),
                Format::Json => Ok(to_json(&t)),
                Format::Csv => {
                    let mut s = String::from("index,value\n");
                    for (i, v) in t.terms.iter().enumerate() {
                        let _ = writeln!(s, "{i},{v}");
                    }
                    Ok(s)
                }
                Format::Dot => Err(unsupported("seq", f)),
            }
        }
        Command::Eta { n, iters } => {
            let e = jcf_expand(n, *iters).map_err(core_err)?;
            match f {
                Format::Text => Ok(e
                    .values
                    .iter()
                    .zip(&e.alphas)
                    .map(|(v, a)| format!("{v} {a}\n"))
                    .collect()),
                Format::Json => Ok(to_json(&e)),
                Format::Csv => {
                    let mut s = String::from("p,value,alpha\n");
                    for (p, (v, a)) in e.values.iter().zip(&e.alphas).enumerate() {
                        let _ = writeln!(s, "{},{v},{a}", p + 1);
                    }
                    Ok(s)
                }
                Format::Dot => Err(unsupported("eta", f)),
            }
        }
        Command::ClosedForm { n, alphas } => {
            let v = jcf_closed_form(n, alphas);
            match f {
                Format::Text => Ok(format!("{v}\n")),
                Format::Json => Ok(to_json(&json!({
                    "n": n.to_string(),
                    "alphas": alphas,
                    "value": v.to_string(),
                    "integer": v.is_integer(),
                }))),
                _ => Err(unsupported("closed-form", f)),
            }
        }
        Command::Ascend {
            n,
            count,
            closed,
            k_max,
        } => {
            let list = if *closed {
                ascendancy_closed(n, *count)
            } else {
                ascendancy_bruteforce(n, *count, *k_max)
            }
            .map_err(usage)?;
            match f {
                Format::Text => Ok(list
                    .iter()
                    .map(|a| format!("{} {}\n", a.value, a.exponent))
                    .collect()),
                Format::Json => Ok(to_json(&list)),
                Format::Csv => Ok(std::iter::once("value,exponent\n".to_string())
                    .chain(list.iter().map(|a| format!("{},{}\n", a.value, a.exponent)))
                    .collect()),
                Format::Dot => Err(unsupported("ascend", f)),
            }
        }
        Command::Involved { n } => {
            let inv = is_involved(n);
            match f {
                Format::Text => Ok(format!("{}\n", inv.involved)),
                Format::Json => Ok(to_json(&inv)),
                _ => Err(unsupported("involved", f)),
            }
        }
        Command::Form { n } => {
            let c = classify(n);
            match f {
                Format::Text => Ok(match &c {
                    Classification::OddForm(d) => format!("{} k={}\n", d.form(), d.k),
                    Classification::Even { residue6, involved } => {
                        format!("even, {residue6} mod 6, involved={involved}\n")
                    }
                    Classification::NotInvolvedOdd => {
                        "odd multiple of 3, not involved\n".to_string()
                    }
                }),
                Format::Json => Ok(to_json(&c)),
                _ => Err(unsupported("form", f)),
            }
        }
        Command::Graph { dot, report, k_max } => {
            if *report {
                let r = construction_report(*k_max).map_err(usage)?;
                return match f {
                    Format::Json => Ok(to_json(&r)),
                    Format::Text => {
                        let mut s = format!(
                            "edges: {}\nvalidated k <= {}\n",
                            r.edge_count, r.validated_k_max
                        );
                        for d in &r.divergences {
                            let _ = writeln!(
                                s,
                                "{:?} {} {} printed={} computed={}",
                                d.kind,
                                d.from,
                                d.condition,
                                d.printed.as_deref().unwrap_or("-"),
                                d.computed.as_deref().unwrap_or("-")
                            );
                        }
                        Ok(s)
                    }
                    _ => Err(unsupported("graph --report", f)),
                };
            }
            let edges = form_graph();
            match if *dot { Format::Dot } else { f } {
                Format::Dot => Ok(graph_dot(edges)),
                Format::Json => Ok(to_json(edges)),
                Format::Text => Ok(edges.iter().map(|e| format!("{e}\n")).collect()),
                Format::Csv => {
                    let mut s = String::from("from,to,modulus,residue,alpha,next_k_a,next_k_b\n");
                    for e in edges {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            e.from, e.to, e.modulus, e.residue, e.alpha, e.next_k.a, e.next_k.b
                        );
                    }
                    Ok(s)
                }
            }
        }
        Command::Triplets => {
            let ts = enumerate_increasing_triplets();
            match f {
                Format::Text => Ok(ts
                    .iter()
                    .map(|t| format!("{t} 3^{}/2^{}\n", t.n(), t.halvings()))
                    .collect()),
                Format::Json => Ok(to_json(&ts)),
                Format::Csv => {
                    Ok(std::iter::once("a,b,c,n,halvings\n".to_string())
                        .chain(ts.iter().map(|t| {
                            format!("{},{},{},{},{}\n", t.a, t.b, t.c, t.n(), t.halvings())
                        }))
                        .collect())
                }
                Format::Dot => Err(unsupported("triplets", f)),
            }
        }
        Command::Routes { anchor, report } => {
            if *report {
                let r = catalog_report();
                return match f {
                    Format::Json => Ok(to_json(&r)),
                    Format::Text => {
                        let mut s = String::new();
                        for a in &r.anchors {
                            let _ = writeln!(
                                s,
                                "{}: catalog {} enumerated {}",
                                a.anchor, a.catalog, a.enumerated
                            );
                        }
                        for m in &r.missing {
                            let names: Vec<String> =
                                m.forms.iter().map(|x| x.to_string()).collect();
                            let _ = writeln!(s, "missing: {} ({})", names.join(" -> "), m.reason);
                        }
                        for e in &r.extra {
                            let _ = writeln!(s, "extra: {e} {}", e.triplet);
                        }
                        Ok(s)
                    }
                    _ => Err(unsupported("routes --report", f)),
                };
            }
            let routes = match anchor {
                Some(a) => enumerate_increasing_routes(*a),
                None => enumerate_all_routes(),
            };
            match f {
                Format::Text => Ok(routes
                    .iter()
                    .map(|r| format!("{r}  {} {}\n", r.triplet, r.variation))
                    .collect()),
                Format::Json => Ok(to_json(&routes)),
                Format::Dot => Ok(routes.iter().map(route_dot).collect()),
                Format::Csv => Err(unsupported("routes", f)),
            }
        }
        Command::RouteWitness { forms, bound } => {
            let route = Route::from_forms(forms).map_err(usage)?;
            match route_witness(&route, bound) {
                Some(w) => match f {
                    Format::Json => Ok(to_json(&w)),
                    Format::Text => Ok(format!(
                        "N={} k0={}\npath: {}",
                        w.n,
                        w.k0,
                        join_line(w.path.iter())
                    )),
                    _ => Err(unsupported("route-witness", f)),
                },
                None => Err(Failure::Check {
                    stdout: String::new(),
                    witnesses: json!({"route": route.to_string(), "bound": bound.to_string(), "error": "no witness"}),
                }),
            }
        }
        Command::Equations {
            i_max,
            alpha_max,
            m_max,
        } => {
            let r = scan_cycle_equations(*i_max, *alpha_max, *m_max);
            match f {
                Format::Text | Format::Csv => Ok(scan_csv(&r)),
                Format::Json => Ok(to_json(&r)),
                Format::Dot => Err(unsupported("equations", f)),
            }
        }
        Command::Verify { statement, range } => {
            let params = StatementParams {
                range: range.map(|r| (r.lo, r.hi)),
                budget,
            };
            let r = verify_statement(statement, &params).map_err(usage)?;
            let stdout = match f {
                Format::Json => to_json(&r),
                Format::Text => format!(
                    "{} {} {}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.statement_id,
                    r.parameters
                ),
                _ => return Err(unsupported("verify", f)),
            };
            if r.pass {
                Ok(stdout)
            } else {
                Err(Failure::Check {
                    stdout,
                    witnesses: Value::Array(r.witnesses),
                })
            }
        }
        Command::Batch {
            range,
            workers,
            cutoff,
            sieve,
            memo_cap,
            chunk,
        } => {
            let config = BatchConfig {
                lo: range.lo,
                hi: range.hi,
                workers: *workers,
                cutoff: *cutoff,
                sieve: *sieve,
                budget,
                memo_cap: *memo_cap,
                chunk: *chunk,
            };
            let r = batch_verify(&config).map_err(verify_err)?;
            match f {
                Format::Json => Ok(to_json(&r)),
                Format::Text => Ok(text_lines(&serde_json::to_value(&r).expect("serializable"))),
                _ => Err(unsupported("batch", f)),
            }
        }
        Command::Census { range } => {
            let r = flight_census(range.lo, range.hi, budget).map_err(verify_err)?;
            let stdout = match f {
                Format::Text | Format::Csv => census_csv(&r),
                Format::Json => to_json(&r),
                Format::Dot => return Err(unsupported("census", f)),
            };
            if r.passed() {
                Ok(stdout)
            } else {
                Err(Failure::Check {
                    stdout,
                    witnesses: serde_json::to_value(&r.violations).expect("serializable"),
                })
            }
        }
        Command::Ruler { count } => {
            let r = ruler_stats(*count).map_err(usage)?;
            match f {
                Format::Json => Ok(to_json(&r)),
                Format::Text => Ok(text_lines(&serde_json::to_value(&r).expect("serializable"))),
                _ => Err(unsupported("ruler", f)),
            }
        }
        Command::ChainFuzz {
            count,
            seed,
            max_len,
        } => {
            let r = chain_fuzz(*count, *seed, *max_len);
            let stdout = match f {
                Format::Json => to_json(&r),
                Format::Text => text_lines(&r),
                _ => return Err(unsupported("chain-fuzz", f)),
            };
            if r["mismatches"].as_array().is_some_and(|m| m.is_empty()) {
                Ok(stdout)
            } else {
                Err(Failure::Check {
                    stdout,
                    witnesses: r["mismatches"].clone(),
                })
            }
        }
    }
}

fn join_line<'a>(vals: impl Iterator<Item = &'a BigUint>) -> String {
    let mut s = vals.map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    s.push('\n');
    s
}

/// Random chains over moduli {2,4,8}; the closed form must agree with substitution.
fn chain_fuzz(count: u32, seed: u64, max_len: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..count {
        let len = rng.gen_range(1..=max_len.max(1));
        let moduli: Vec<u32> = (0..len).map(|_| [2, 4, 8][rng.gen_range(0..3)]).collect();
        let residues: Vec<u32> = moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        let k_last = BigUint::from(rng.gen::<u64>());
        let chain = CongruenceChain::new(moduli.clone(), residues.clone());
        let (closed, seq) = (chain.k0(&k_last), chain.k0_sequential(&k_last));
        if closed != seq {
            mismatches.push(json!({
                "moduli": moduli,
                "residues": residues,
                "k_last": k_last.to_string(),
                "closed": closed.to_string(),
                "sequential": seq.to_string(),
            }));
        }
    }
    json!({"seed": seed, "count": count, "mismatches": mismatches})
}

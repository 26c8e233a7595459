use std::process::Command;

use num_bigint::BigUint;
use syracuse_cli::{run, to_json, Output};
use syracuse_core::{big, jcf_expand, syracuse_sequence, JcfExpansion, SyracuseTrace};
use syracuse_cycles::{
    ascendancy_bruteforce, scan_csv, scan_cycle_equations, Ascendant, ScanReport,
};
use syracuse_forms::{
    classify, construction_report, form_graph, graph_dot, Classification, FormEdge, GraphReport,
    Involvement, RulerReport,
};
use syracuse_routes::{
    catalog_report, enumerate_increasing_routes, route_dot, CatalogReport, Route, RouteWitness,
    Triplet,
};
use syracuse_verify::{
    batch_verify, census_csv, flight_census, BatchConfig, BatchReport, CensusReport,
    VerificationReport,
};

fn cli(args: &str) -> Output {
    run(std::iter::once("syracuse").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let o = cli(args);
    assert_eq!(o.code, 0, "{args}: {}", o.stderr);
    o.stdout
}

fn parse<T: serde::de::DeserializeOwned>(args: &str) -> T {
    serde_json::from_str(&ok(args)).unwrap_or_else(|e| panic!("{args}: {e}"))
}

#[test]
fn seq_thirteen() {
    assert_eq!(ok("seq 13"), "13 40 20 10 5 16 8 4 2 1\n");
    let t: SyracuseTrace = parse("seq 13 --format json");
    assert_eq!(t.flight_time, 9);
    assert_eq!(t, syracuse_sequence(&big(13), 1_000_000).unwrap());
}

#[test]
fn involvement_examples() {
    assert_eq!(ok("involved 33"), "false\n");
    assert_eq!(ok("involved 31"), "true\n");
    assert_eq!(ok("involved 34"), "true\n");
    assert_eq!(ok("involved 32"), "false\n");
    let inv: Involvement = parse("involved 34 --format json");
    assert_eq!(inv.residue6, 4);
}

#[test]
fn json_round_trips() {
    let _: JcfExpansion = parse("eta 27 --iters 5 --format json");
    let _: Vec<Ascendant> = parse("ascend 5 --count 4 --format json");
    let _: Vec<Ascendant> = parse("ascend 5 --count 4 --closed --format json");
    let c: Classification = parse("form 47 --format json");
    assert_eq!(c, classify(&big(47)));
    let _: Classification = parse("form 34 --format json");
    let _: Classification = parse("form 33 --format json");
    let edges: Vec<FormEdge> = parse("graph --format json");
    assert_eq!(edges, form_graph());
    let _: GraphReport = parse("graph --report --format json");
    let ts: Vec<Triplet> = parse("triplets --format json");
    assert_eq!(ts.len(), 15);
    let routes: Vec<Route> = parse("routes --format json");
    assert_eq!(routes.len(), 19);
    let _: CatalogReport = parse("routes --report --format json");
    let w: RouteWitness = parse("route-witness 5+6(3+4k) 5+6(3+4k) --format json");
    assert_eq!(w.n, big(47));
    let _: ScanReport = parse("equations --i-max 2 --alpha-max 6 --m-max 3 --format json");
    let v: VerificationReport = parse("verify --statement 1.6 --range 1..500 --format json");
    assert!(v.pass);
    let b: BatchReport = parse("batch --range 1..1e4 --format json");
    assert_eq!(b.verified_count, 10_000);
    let _: CensusReport = parse("census --range 1..100 --format json");
    let _: RulerReport = parse("ruler --count 1e4 --format json");
}

#[test]
fn dot_outputs_parse() {
    for args in [
        "graph --dot",
        "graph --format dot",
        "routes --anchor 1+6(4k) --format dot",
    ] {
        let dot = ok(args);
        dot_parser::ast::Graph::try_from(dot.as_str()).unwrap_or_else(|e| panic!("{args}: {e}"));
    }
    let many = ok("routes --anchor 5+6(3+4k) --format dot");
    let graphs = dot_parser::ast::Graphs::try_from(many.as_str()).unwrap();
    let expected = enumerate_increasing_routes("5+6(3+4k)".parse().unwrap()).len();
    assert_eq!(graphs.graphs.len(), expected);
    assert!(expected > 1);
}

#[test]
fn byte_identical_to_library() {
    assert_eq!(ok("graph --dot"), graph_dot(form_graph()));
    assert_eq!(
        ok("graph --report --format json"),
        to_json(&construction_report(1000).unwrap())
    );
    let r = &enumerate_increasing_routes("1+6(4k)".parse().unwrap());
    assert_eq!(
        ok("routes --anchor 1+6(4k) --format dot"),
        r.iter().map(route_dot).collect::<String>()
    );
    assert_eq!(ok("routes --anchor 1+6(4k) --format json"), to_json(r));
    assert_eq!(
        ok("routes --report --format json"),
        to_json(&catalog_report())
    );
    assert_eq!(
        ok("equations --i-max 3 --alpha-max 8 --m-max 4"),
        scan_csv(&scan_cycle_equations(3, 8, 4))
    );
    assert_eq!(
        ok("census --range 1..1000"),
        census_csv(&flight_census(1, 1000, 1_000_000).unwrap())
    );
    assert_eq!(
        ok("ascend 7 --count 5 --format json"),
        to_json(&ascendancy_bruteforce(&big(7), 5, 256).unwrap())
    );
    assert_eq!(
        ok("eta 27 --iters 4 --format json"),
        to_json(&jcf_expand(&big(27), 4).unwrap())
    );
    let huge = "1".repeat(60);
    let n: BigUint = huge.parse().unwrap();
    assert_eq!(
        ok(&format!("seq {huge} --format json")),
        to_json(&syracuse_sequence(&n, 1_000_000).unwrap())
    );
    // batch differs only in throughput
    let cli_report: BatchReport = parse("batch --range 1..50000 --workers 2 --sieve --format json");
    let mut c = BatchConfig::new(1, 50_000);
    c.workers = 2;
    c.sieve = true;
    assert!(cli_report.same_results(&batch_verify(&c).unwrap()));
}

#[test]
fn exit_codes() {
    assert_eq!(cli("seq").code, 2);
    assert_eq!(cli("seq abc").code, 2);
    assert_eq!(cli("seq -5").code, 2);
    assert_eq!(cli("seq 0").code, 2);
    assert_eq!(cli("eta 4").code, 2);
    assert_eq!(cli("nonsense").code, 2);
    assert_eq!(cli("batch --range 5..1").code, 2);
    assert_eq!(cli("verify --statement 9.9").code, 2);
    assert!(cli("verify --statement 9.9").stderr.contains("1.1"));
    assert_eq!(cli("seq 13 --format dot").code, 2);
    assert_eq!(cli("route-witness 5+6(4k) 1+6(1+4k) 5+6(4k)").code, 2);
    let help = cli("--help");
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("batch"));

    let fail = cli("seq 27 --budget 50");
    assert_eq!(fail.code, 1);
    let w: serde_json::Value = serde_json::from_str(&fail.stderr).unwrap();
    assert_eq!(w["n"], "27");
    let fail = cli("batch --range 1..100 --budget 50");
    assert_eq!(fail.code, 1);
    let w: serde_json::Value = serde_json::from_str(&fail.stderr).unwrap();
    assert_eq!(w["n"], 27);
    let fail = cli("verify --statement 4.1 --range 25..30 --budget 50 --format json");
    assert_eq!(fail.code, 1);
    let w: serde_json::Value = serde_json::from_str(&fail.stderr).unwrap();
    assert!(w.as_array().is_some_and(|a| !a.is_empty()));
    let fail = cli("census --range 25..30 --budget 50");
    assert_eq!(fail.code, 1);
}

#[test]
fn equations_genuine_rows_are_one() {
    let csv = ok("equations --i-max 5 --alpha-max 16 --m-max 16");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("class,i,alphas,m,n_numerator,n_denominator,genuine")
    );
    let genuine: Vec<&str> = lines.filter(|l| l.ends_with(",true")).collect();
    assert!(!genuine.is_empty());
    for row in genuine {
        let cols: Vec<&str> = row.split(',').collect();
        // class 1, n = 0  =>  N = 1
        assert_eq!((cols[0], cols[4]), ("1", "0"), "{row}");
    }
}

#[test]
fn chain_fuzz_is_seeded() {
    assert_eq!(
        ok("chain-fuzz --seed 3 --count 200"),
        ok("chain-fuzz --seed 3 --count 200")
    );
    assert!(ok("chain-fuzz --seed 3 --count 200").contains("mismatches: []"));
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_syracuse"))
        .args(["seq", "13"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), ok("seq 13"));
    let out = Command::new(env!("CARGO_BIN_EXE_syracuse"))
        .args(["seq", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

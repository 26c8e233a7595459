use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use syracuse_core::{jcf, jcf_u128};

use crate::{odd_form_of, Form, FormDecomposition, FormError, Result, VariationClass};

/// `k' = a*t + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub a: u64,
    pub b: u64,
}

impl Affine {
    pub fn apply(&self, t: &BigUint) -> BigUint {
        t * self.a + self.b
    }
}

/// Transition `from -> to` taken whenever `k ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEdge {
    pub from: Form,
    pub to: Form,
    pub modulus: u32,
    pub residue: u32,
    /// Applied to `t = (k - residue) / modulus`.
    pub next_k: Affine,
    pub alpha: u32,
}

impl FormEdge {
    pub fn matches(&self, k: &BigUint) -> bool {
        k % self.modulus == BigUint::from(self.residue)
    }

    /// Image `k'` of `k`, when the condition holds.
    pub fn apply(&self, k: &BigUint) -> Option<BigUint> {
        if !self.matches(k) {
            return None;
        }
        let t = (k - self.residue) / self.modulus;
        Some(self.next_k.apply(&t))
    }

    pub fn label(&self) -> String {
        format!("k≡{}[{}], α={}", self.residue, self.modulus, self.alpha)
    }
}

impl fmt::Display for FormEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ({})", self.from, self.to, self.label())
    }
}

fn decompose_u64(v: u64) -> (Form, u64) {
    let f = Form::new((v % 24 % 6) as u8, (v % 24 / 6) as u8)
        .expect("image of an odd form is involved");
    (f, v / 24)
}

fn jump_u64(v: u64) -> (u64, u32) {
    let (w, a) = jcf_u128(v as u128).expect("odd, small");
    (w as u64, a)
}

/// Edges read off direct computation: for each form with valuation `α`,
/// the image form is fixed by `k mod 2^α` and `k'` is affine in the quotient.
pub fn derive_edges() -> Vec<FormEdge> {
    let mut edges = Vec::with_capacity(24);
    for from in Form::ALL {
        let alpha = from.class().alpha();
        let m = 1u32 << alpha;
        for rho in 0..m {
            if from.exact_parity().is_some_and(|p| rho % 2 != p as u32) {
                continue;
            }
            let (w0, a0) = jump_u64(from.value_u64(rho as u64));
            let (w1, a1) = jump_u64(from.value_u64((rho + m) as u64));
            debug_assert_eq!((a0, a1), (alpha, alpha));
            let (to, b) = decompose_u64(w0);
            let (to1, k1) = decompose_u64(w1);
            debug_assert_eq!(to, to1);
            edges.push(FormEdge {
                from,
                to,
                modulus: m,
                residue: rho,
                next_k: Affine { a: k1 - b, b },
                alpha,
            });
        }
    }
    edges
}

/// Every `k <= k_max` satisfying an edge's condition must jump along it.
pub fn validate_edges(edges: &[FormEdge], k_max: u64) -> Result<()> {
    for e in edges {
        let mut k = e.residue as u64;
        while k <= k_max {
            let t = (k - e.residue as u64) / e.modulus as u64;
            let (w, a) = jump_u64(e.from.value_u64(k));
            let (to, k2) = decompose_u64(w);
            if to != e.to || k2 != e.next_k.a * t + e.next_k.b || a != e.alpha {
                return Err(FormError::EdgeDisagrees {
                    edge: e.to_string(),
                    k,
                });
            }
            k += e.modulus as u64;
        }
    }
    Ok(())
}

/// The 24-edge graph, validated for `k <= 200` on first use.
pub fn form_graph() -> &'static [FormEdge] {
    static GRAPH: OnceLock<Vec<FormEdge>> = OnceLock::new();
    GRAPH.get_or_init(|| {
        let edges = derive_edges();
        if let Err(e) = validate_edges(&edges, 200) {
            panic!("form graph construction failed: {e}");
        }
        edges
    })
}

pub fn edge_for(from: Form, k: &BigUint) -> Option<&'static FormEdge> {
    form_graph().iter().find(|e| e.from == from && e.matches(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Table,
    Arithmetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum StepOutcome {
    Step {
        next: FormDecomposition,
        alpha: u64,
    },
    /// c-form with the parity that needs four or more halvings.
    OutsideTableDomain,
}

pub fn form_step(d: &FormDecomposition, mode: Mode) -> Result<StepOutcome> {
    let from = d.form();
    match mode {
        Mode::Arithmetic => {
            let (w, alpha) =
                jcf(&d.value).map_err(|_| FormError::NotOddInvolved(d.value.clone()))?;
            let next = odd_form_of(&w)?;
            Ok(StepOutcome::Step { next, alpha })
        }
        Mode::Table => Ok(match edge_for(from, &d.k) {
            Some(e) => {
                let k = e.apply(&d.k).expect("edge matched");
                StepOutcome::Step {
                    next: e.to.decompose(k),
                    alpha: e.alpha as u64,
                }
            }
            None => StepOutcome::OutsideTableDomain,
        }),
    }
}

/// `(from, modulus, residue, to)` with forms as `(r, q)`.
pub type PrintedRow = ((u8, u8), u32, u32, (u8, u8));

/// The congruence tables as printed.
pub const PRINTED_ROWS: [PrintedRow; 32] = [
    ((1, 0), 4, 0, (1, 0)),
    ((1, 0), 4, 1, (1, 3)),
    ((1, 0), 4, 2, (1, 2)),
    ((1, 0), 4, 3, (1, 1)),
    ((1, 1), 4, 0, (5, 1)),
    ((1, 1), 4, 1, (5, 3)),
    ((1, 1), 4, 2, (5, 1)),
    ((1, 1), 4, 3, (5, 3)),
    ((1, 2), 8, 0, (5, 0)),
    ((1, 2), 8, 2, (5, 3)),
    ((1, 2), 8, 4, (5, 2)),
    ((1, 2), 8, 6, (5, 1)),
    ((1, 3), 4, 0, (5, 0)),
    ((1, 3), 4, 1, (5, 2)),
    ((1, 3), 4, 2, (5, 0)),
    ((1, 3), 4, 3, (5, 2)),
    ((5, 0), 8, 0, (1, 1)),
    ((5, 0), 8, 2, (1, 0)),
    ((5, 0), 8, 4, (1, 3)),
    ((5, 0), 8, 6, (1, 2)),
    ((5, 1), 4, 0, (5, 2)),
    ((5, 1), 4, 1, (5, 0)),
    ((5, 1), 4, 2, (5, 2)),
    ((5, 1), 4, 3, (5, 0)),
    ((5, 2), 4, 0, (1, 2)),
    ((5, 2), 4, 1, (1, 1)),
    ((5, 2), 4, 2, (1, 0)),
    ((5, 2), 4, 3, (1, 3)),
    ((5, 3), 4, 0, (5, 1)),
    ((5, 3), 4, 1, (5, 3)),
    ((5, 3), 4, 2, (5, 1)),
    ((5, 3), 4, 3, (5, 3)),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceKind {
    /// Printed row sits on the parity that needs α ≥ 4.
    ParityExcluded,
    /// Printed target differs from the computed one.
    WrongTarget,
    /// A computed edge that no printed row covers.
    MissingRow,
    /// Printed images have a different residue `r` than the computed ones.
    ImageResidue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDivergence {
    pub kind: DivergenceKind,
    pub from: Form,
    pub condition: String,
    pub printed: Option<String>,
    pub computed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub edge_count: usize,
    pub validated_k_max: u64,
    pub edges: Vec<FormEdge>,
    pub divergences: Vec<TableDivergence>,
}

const SAMPLES: u64 = 64;

/// Validates the derived graph up to `k_max` and lists every place where the
/// printed tables and direct computation part ways.
pub fn construction_report(k_max: u64) -> Result<GraphReport> {
    let edges = derive_edges();
    validate_edges(&edges, k_max)?;
    let mut divergences = Vec::new();
    let printed: Vec<(Form, u32, u32, Form)> = PRINTED_ROWS
        .iter()
        .map(|&((r, q), m, rho, (r2, q2))| {
            (Form::new(r, q).unwrap(), m, rho, Form::new(r2, q2).unwrap())
        })
        .collect();

    for &(from, m, rho, to) in &printed {
        let cond = format!("k≡{rho}[{m}]");
        for t in 0..SAMPLES {
            let k = rho as u64 + m as u64 * t;
            let (w, a) = jump_u64(from.value_u64(k));
            if from.class() == VariationClass::C && a != 3 {
                divergences.push(TableDivergence {
                    kind: DivergenceKind::ParityExcluded,
                    from,
                    condition: cond,
                    printed: Some(to.to_string()),
                    computed: Some(format!("α={a} at k={k}")),
                });
                break;
            }
            let (got, _) = decompose_u64(w);
            if got != to {
                divergences.push(TableDivergence {
                    kind: DivergenceKind::WrongTarget,
                    from,
                    condition: cond,
                    printed: Some(to.to_string()),
                    computed: Some(got.to_string()),
                });
                break;
            }
        }
    }

    for e in &edges {
        let covered = (0..SAMPLES).all(|t| {
            let k = e.residue as u64 + e.modulus as u64 * t;
            printed
                .iter()
                .any(|&(f, m, rho, _)| f == e.from && k % m as u64 == rho as u64)
        });
        if !covered {
            divergences.push(TableDivergence {
                kind: DivergenceKind::MissingRow,
                from: e.from,
                condition: format!("k≡{}[{}]", e.residue, e.modulus),
                printed: None,
                computed: Some(e.to.to_string()),
            });
        }
    }

    for from in Form::ALL {
        let p: BTreeSet<u8> = printed
            .iter()
            .filter(|r| r.0 == from)
            .map(|r| r.3.r())
            .collect();
        let c: BTreeSet<u8> = edges
            .iter()
            .filter(|e| e.from == from)
            .map(|e| e.to.r())
            .collect();
        if p != c {
            let show = |s: &BTreeSet<u8>| {
                s.iter()
                    .map(|r| format!("{r}+6n"))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            divergences.push(TableDivergence {
                kind: DivergenceKind::ImageResidue,
                from,
                condition: "all k".into(),
                printed: Some(show(&p)),
                computed: Some(show(&c)),
            });
        }
    }

    Ok(GraphReport {
        edge_count: edges.len(),
        validated_k_max: k_max,
        edges,
        divergences,
    })
}

/// DOT rendering, one node per form and one labelled arc per edge.
pub fn graph_dot(edges: &[FormEdge]) -> String {
    let mut s = String::from("digraph forms {\n  node [shape=box];\n");
    for f in Form::ALL {
        let _ = writeln!(s, "  \"{f}\" [label=\"{f}\\n{}\"];", f.class());
    }
    for e in edges {
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            e.from,
            e.to,
            e.label()
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use syracuse_core::big;

    fn out(f: Form) -> Vec<Form> {
        form_graph()
            .iter()
            .filter(|e| e.from == f)
            .map(|e| e.to)
            .collect()
    }

    #[test]
    fn twenty_four_edges() {
        assert_eq!(form_graph().len(), 24);
        for f in Form::ALL {
            let want = match f.class() {
                VariationClass::A => 2,
                _ => 4,
            };
            assert_eq!(out(f).len(), want, "{f}");
        }
    }

    #[test]
    fn out_neighbours() {
        let f = |s: &str| s.parse::<Form>().unwrap();
        assert_eq!(out(f("1+6(1+4k)")), vec![f("5+6(1+4k)"), f("5+6(3+4k)")]);
        let mut t = out(f("5+6(2+4k)"));
        t.sort();
        assert_eq!(t, Form::ALL[..4].to_vec());
    }

    #[test]
    fn step_examples() {
        let d = odd_form_of(&big(7)).unwrap();
        for mode in [Mode::Table, Mode::Arithmetic] {
            let s = form_step(&d, mode).unwrap();
            assert_eq!(
                s,
                StepOutcome::Step {
                    next: "5+6(1+4k)".parse::<Form>().unwrap().decompose(big(0)),
                    alpha: 1
                }
            );
        }
        let d = odd_form_of(&big(17)).unwrap();
        let s = form_step(&d, Mode::Table).unwrap();
        assert_eq!(
            s,
            StepOutcome::Step {
                next: odd_form_of(&big(13)).unwrap(),
                alpha: 2
            }
        );
        let d = odd_form_of(&big(1)).unwrap();
        let s = form_step(&d, Mode::Table).unwrap();
        assert_eq!(
            s,
            StepOutcome::Step {
                next: odd_form_of(&big(1)).unwrap(),
                alpha: 2
            }
        );
    }

    #[test]
    fn c_form_wrong_parity() {
        // 13 + 24 = 37: 112 = 16 * 7
        let d = odd_form_of(&big(37)).unwrap();
        assert_eq!(
            form_step(&d, Mode::Table).unwrap(),
            StepOutcome::OutsideTableDomain
        );
        match form_step(&d, Mode::Arithmetic).unwrap() {
            StepOutcome::Step { alpha, .. } => assert_eq!(alpha, 4),
            o => panic!("{o:?}"),
        }
        // 5 + 6*0 + 24*0 = 5: 16
        let d = odd_form_of(&big(5)).unwrap();
        assert_eq!(
            form_step(&d, Mode::Table).unwrap(),
            StepOutcome::OutsideTableDomain
        );
    }

    #[test]
    fn all_slopes_are_three() {
        assert!(form_graph().iter().all(|e| e.next_k.a == 3));
    }
}

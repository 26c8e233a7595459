use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Deserialize, Serialize};
use syracuse_forms::{form_graph, Form, FormEdge, VariationClass};

use crate::{k0_chain, CongruenceChain, Result, RouteError, Triplet};

/// Longest walk that can still increase (every 8-step triplet fails).
pub const MAX_ROUTE_LEN: usize = 7;

/// Exact variation `3^n / 2^m` of a route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Variation {
    pub n: u32,
    pub m: u32,
}

impl Variation {
    pub fn ratio(&self) -> BigRational {
        let num = BigUint::from(3u32).pow(self.n);
        let den = BigUint::from(1u32) << self.m as usize;
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn increasing(&self) -> bool {
        BigUint::from(3u32).pow(self.n) > BigUint::from(1u32) << self.m as usize
    }
}

impl fmt::Display for Variation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "3^{}/2^{}", self.n, self.m)
    }
}

impl FromStr for Variation {
    type Err = RouteError;
    fn from_str(s: &str) -> Result<Variation> {
        let bad = || RouteError::BadVariation(s.to_string());
        let (l, r) = s.split_once('/').ok_or_else(bad)?;
        let n = l
            .strip_prefix("3^")
            .and_then(|x| x.parse().ok())
            .ok_or_else(bad)?;
        let m = r
            .strip_prefix("2^")
            .and_then(|x| x.parse().ok())
            .ok_or_else(bad)?;
        Ok(Variation { n, m })
    }
}

impl From<Variation> for String {
    fn from(v: Variation) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for Variation {
    type Error = RouteError;
    fn try_from(s: String) -> Result<Variation> {
        s.parse()
    }
}

/// A closed walk over the form graph, anchored at its first form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub anchor: Form,
    pub steps: Vec<FormEdge>,
    pub triplet: Triplet,
    pub variation: Variation,
    pub chain: CongruenceChain,
}

fn edge(from: Form, to: Form) -> Option<&'static FormEdge> {
    form_graph().iter().find(|e| e.from == from && e.to == to)
}

impl Route {
    /// Builds a route from its form sequence, first and last equal.
    pub fn from_forms(forms: &[Form]) -> Result<Route> {
        if forms.len() < 2 {
            return Err(RouteError::Empty);
        }
        if forms.first() != forms.last() {
            return Err(RouteError::NotClosed);
        }
        let body = &forms[..forms.len() - 1];
        if body.len() > MAX_ROUTE_LEN {
            return Err(RouteError::TooLong(body.len()));
        }
        for (i, f) in body.iter().enumerate() {
            if body[..i].contains(f) {
                return Err(RouteError::RepeatedForm(*f));
            }
        }
        let steps = forms
            .windows(2)
            .map(|w| {
                edge(w[0], w[1]).copied().ok_or(RouteError::MissingEdge {
                    from: w[0],
                    to: w[1],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(steps)
    }

    fn from_steps(steps: Vec<FormEdge>) -> Result<Route> {
        let anchor = steps[0].from;
        let (mut a, mut b, mut c) = (0, 0, 0);
        for e in &steps {
            match e.from.class() {
                VariationClass::A => a += 1,
                VariationClass::B => b += 1,
                VariationClass::C => c += 1,
            }
        }
        let triplet = Triplet { a, b, c };
        let variation = Variation {
            n: triplet.n(),
            m: triplet.halvings(),
        };
        let chain = k0_chain(&steps)?;
        Ok(Route {
            anchor,
            steps,
            triplet,
            variation,
            chain,
        })
    }

    /// Visited forms, anchor repeated at the end.
    pub fn forms(&self) -> Vec<Form> {
        let mut v: Vec<Form> = self.steps.iter().map(|e| e.from).collect();
        v.push(self.anchor);
        v
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All structural invariants plus the increase test.
    pub fn check(&self) -> Result<()> {
        let rebuilt = Route::from_forms(&self.forms())?;
        if &rebuilt != self {
            return Err(RouteError::NotClosed);
        }
        Ok(())
    }

    pub fn is_increasing(&self) -> bool {
        self.variation.increasing()
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.forms().iter().map(|f| f.to_string()).collect();
        f.write_str(&names.join(" -> "))
    }
}

/// Depth-first search for closed walks through `anchor` that visit each form
/// once, have at most [`MAX_ROUTE_LEN`] steps and increase. Output is in
/// lexicographic order of form indices.
pub fn enumerate_increasing_routes(anchor: Form) -> Vec<Route> {
    let mut out = Vec::new();
    let mut path = vec![anchor];
    dfs(anchor, &mut path, &mut out);
    out
}

fn successors(f: Form) -> Vec<Form> {
    let mut v: Vec<Form> = form_graph()
        .iter()
        .filter(|e| e.from == f)
        .map(|e| e.to)
        .collect();
    v.sort_by_key(|f| f.index());
    v
}

fn dfs(anchor: Form, path: &mut Vec<Form>, out: &mut Vec<Route>) {
    let cur = *path.last().expect("nonempty");
    for next in successors(cur) {
        if next == anchor {
            path.push(anchor);
            let r = Route::from_forms(path).expect("walk built along graph edges");
            if r.is_increasing() {
                out.push(r);
            }
            path.pop();
        } else if !path.contains(&next) && path.len() < MAX_ROUTE_LEN {
            path.push(next);
            dfs(anchor, path, out);
            path.pop();
        }
    }
}

pub fn enumerate_all_routes() -> Vec<Route> {
    Form::ALL
        .iter()
        .flat_map(|&f| enumerate_increasing_routes(f))
        .collect()
}

/// Groups anchored routes by cyclic rotation; the key starts at the smallest form.
pub fn rotation_classes(routes: &[Route]) -> BTreeMap<Vec<Form>, Vec<Route>> {
    let mut m: BTreeMap<Vec<Form>, Vec<Route>> = BTreeMap::new();
    for r in routes {
        let body: Vec<Form> = r.steps.iter().map(|e| e.from).collect();
        let start = (0..body.len())
            .min_by_key(|&i| body[i].index())
            .unwrap_or(0);
        let mut key: Vec<Form> = body[start..]
            .iter()
            .chain(&body[..start])
            .copied()
            .collect();
        key.push(key[0]);
        m.entry(key).or_default().push(r.clone());
    }
    m
}

/// Form graph with the route's arcs highlighted.
pub fn route_dot(route: &Route) -> String {
    let mut s = String::from("digraph route {\n  node [shape=box];\n");
    for f in Form::ALL {
        let style = if route.forms().contains(&f) {
            ", style=bold"
        } else {
            ""
        };
        let _ = writeln!(s, "  \"{f}\" [label=\"{f}\"{style}];");
    }
    for e in form_graph() {
        let on = route.steps.iter().any(|r| r.from == e.from && r.to == e.to);
        let extra = if on {
            ", color=red, penwidth=2"
        } else {
            ", color=gray"
        };
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}\"{extra}];",
            e.from,
            e.to,
            e.label()
        );
    }
    s.push_str("}\n");
    s
}

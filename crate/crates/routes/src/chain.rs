use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use syracuse_core::jcf;
use syracuse_forms::{odd_form_of, FormEdge};

use crate::{Result, Route, RouteError};

/// `k_{j-1} = r_j + m_j k_j` for `j = 1..L`, so that
/// `k_0 = k_L * prod(m) + sum_j r_j * m_1 * .. * m_{j-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceChain {
    pub moduli: Vec<u32>,
    pub residues: Vec<u32>,
}

impl CongruenceChain {
    pub fn new(moduli: Vec<u32>, residues: Vec<u32>) -> CongruenceChain {
        assert_eq!(moduli.len(), residues.len());
        CongruenceChain { moduli, residues }
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Closed form.
    pub fn k0(&self, k_last: &BigUint) -> BigUint {
        let mut acc = BigUint::zero();
        let mut prod = BigUint::one();
        for (m, r) in self.moduli.iter().zip(&self.residues) {
            acc += &prod * *r;
            prod *= *m;
        }
        acc + prod * k_last
    }

    /// Back-substitution from `k_L`.
    pub fn k0_sequential(&self, k_last: &BigUint) -> BigUint {
        let mut k = k_last.clone();
        for (m, r) in self.moduli.iter().zip(&self.residues).rev() {
            k = k * *m + *r;
        }
        k
    }

    /// `k_0` ranges over `residue() + modulus() * t`.
    pub fn modulus(&self) -> BigUint {
        self.moduli.iter().fold(BigUint::one(), |p, m| p * *m)
    }

    pub fn residue(&self) -> BigUint {
        self.k0(&BigUint::zero())
    }
}

/// Residue conditions on the anchor's `k` that make every step of the walk fire.
///
/// The current form's `k` is tracked as `A*s + B` in a free variable `s`; each
/// step pins `s` mod the step's modulus and substitutes `s = r + m*s'`.
pub fn k0_chain(steps: &[FormEdge]) -> Result<CongruenceChain> {
    let mut a = BigUint::one();
    let mut b = BigUint::zero();
    let mut moduli = Vec::with_capacity(steps.len());
    let mut residues = Vec::with_capacity(steps.len());
    for (j, e) in steps.iter().enumerate() {
        let m = e.modulus;
        let r = (0..m)
            .find(|&r| (&a * r + &b) % m == BigUint::from(e.residue))
            .ok_or(RouteError::Unrealizable { step: j + 1 })?;
        // k = A r + B + A m s'  =>  t = (A r + B - rho)/m + A s'
        let base = (&a * r + &b - e.residue) / m;
        b = base * e.next_k.a + e.next_k.b;
        a *= e.next_k.a;
        moduli.push(m);
        residues.push(r);
    }
    Ok(CongruenceChain { moduli, residues })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteWitness {
    #[serde(with = "syracuse_core::dec")]
    pub n: BigUint,
    #[serde(with = "syracuse_core::dec")]
    pub k0: BigUint,
    /// Odd values visited, start included and return value last.
    #[serde(with = "syracuse_core::dec::vec")]
    pub path: Vec<BigUint>,
}

/// Smallest `N <= bound` in the route's class whose jumps follow the route.
pub fn route_witness(route: &Route, bound: &BigUint) -> Option<RouteWitness> {
    let chain = k0_chain(&route.steps).ok()?;
    let (res, modulus) = (chain.residue(), chain.modulus());
    let mut t = BigUint::zero();
    loop {
        let k0 = &res + &modulus * &t;
        let n = route.anchor.value(&k0);
        if &n > bound {
            return None;
        }
        if let Some(path) = follows(route, &n) {
            return Some(RouteWitness { n, k0, path });
        }
        t += 1u32;
    }
}

fn follows(route: &Route, n: &BigUint) -> Option<Vec<BigUint>> {
    let mut path = vec![n.clone()];
    let mut cur = n.clone();
    for e in &route.steps {
        let (next, alpha) = jcf(&cur).ok()?;
        let d = odd_form_of(&next).ok()?;
        if d.form() != e.to || alpha.to_u32() != Some(e.alpha) {
            return None;
        }
        path.push(next.clone());
        cur = next;
    }
    Some(path)
}

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{FormError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariationClass {
    A,
    B,
    C,
}

impl VariationClass {
    /// Valuation consumed by one jump (for `C`, when the parity condition holds).
    pub fn alpha(self) -> u32 {
        match self {
            VariationClass::A => 1,
            VariationClass::B => 2,
            VariationClass::C => 3,
        }
    }
}

impl fmt::Display for VariationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariationClass::A => "a",
            VariationClass::B => "b",
            VariationClass::C => "c",
        })
    }
}

/// One of the eight classes `r + 6(q + 4k)` of involved odd numbers mod 24.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Form {
    r: u8,
    q: u8,
}

impl Form {
    pub const ALL: [Form; 8] = [
        Form { r: 1, q: 0 },
        Form { r: 1, q: 1 },
        Form { r: 1, q: 2 },
        Form { r: 1, q: 3 },
        Form { r: 5, q: 0 },
        Form { r: 5, q: 1 },
        Form { r: 5, q: 2 },
        Form { r: 5, q: 3 },
    ];

    pub fn new(r: u8, q: u8) -> Option<Form> {
        ((r == 1 || r == 5) && q < 4).then_some(Form { r, q })
    }

    pub fn r(self) -> u8 {
        self.r
    }

    pub fn q(self) -> u8 {
        self.q
    }

    /// Position in [`Form::ALL`].
    pub fn index(self) -> usize {
        (if self.r == 1 { 0 } else { 4 }) + self.q as usize
    }

    /// Residue mod 24.
    pub fn residue24(self) -> u32 {
        self.r as u32 + 6 * self.q as u32
    }

    pub fn class(self) -> VariationClass {
        match (self.r, self.q) {
            (1, 0) | (5, 2) => VariationClass::B,
            (1, 2) | (5, 0) => VariationClass::C,
            _ => VariationClass::A,
        }
    }

    /// For c-forms, the parity of `k` that gives valuation exactly 3.
    pub fn exact_parity(self) -> Option<u8> {
        match (self.r, self.q) {
            (1, 2) => Some(0),
            (5, 0) => Some(1),
            _ => None,
        }
    }

    pub fn value(self, k: &BigUint) -> BigUint {
        k * 24u32 + self.residue24()
    }

    pub fn value_u64(self, k: u64) -> u64 {
        24 * k + self.residue24() as u64
    }

    pub fn decompose(self, k: BigUint) -> FormDecomposition {
        FormDecomposition {
            r: self.r,
            q: self.q,
            value: self.value(&k),
            k,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "{}+6(4k)", self.r)
        } else {
            write!(f, "{}+6({}+4k)", self.r, self.q)
        }
    }
}

impl From<Form> for String {
    fn from(f: Form) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Form {
    type Error = FormError;
    fn try_from(s: String) -> Result<Form> {
        s.parse()
    }
}

/// Accepts `1+6(4k)`, `5+6(2+4k)`, `1+6(0+4k)`, or the short `r:q`.
impl FromStr for Form {
    type Err = FormError;

    fn from_str(s: &str) -> Result<Form> {
        let bad = || FormError::UnknownForm(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((r, q)) = t.split_once(':') {
            let r = r.parse().map_err(|_| bad())?;
            let q = q.parse().map_err(|_| bad())?;
            return Form::new(r, q).ok_or_else(bad);
        }
        let (r, rest) = t.split_once("+6(").ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let q = match inner {
            "4k" => 0,
            _ => inner
                .strip_suffix("+4k")
                .and_then(|q| q.parse().ok())
                .ok_or_else(bad)?,
        };
        Form::new(r.parse().map_err(|_| bad())?, q).ok_or_else(bad)
    }
}

/// An involved odd value written as `r + 6(q + 4k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormDecomposition {
    pub r: u8,
    pub q: u8,
    #[serde(with = "syracuse_core::dec")]
    pub k: BigUint,
    #[serde(with = "syracuse_core::dec")]
    pub value: BigUint,
}

impl FormDecomposition {
    pub fn form(&self) -> Form {
        Form::new(self.r, self.q).expect("decomposition holds a valid form")
    }
}

pub fn odd_form_of(n: &BigUint) -> Result<FormDecomposition> {
    let (k, rem) = n.div_rem(&BigUint::from(24u32));
    let rem = rem.to_u8().expect("< 24");
    match Form::new(rem % 6, rem / 6) {
        Some(f) => Ok(f.decompose(k)),
        None => Err(FormError::NotOddInvolved(n.clone())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Involvement {
    pub involved: bool,
    pub residue6: u8,
}

/// Odd and coprime to 3, or congruent to 4 mod 6.
pub fn is_involved(n: &BigUint) -> Involvement {
    let residue6 = (n % 6u32).to_u8().expect("< 6");
    Involvement {
        involved: !n.is_zero() && matches!(residue6, 1 | 4 | 5),
        residue6,
    }
}

#[inline]
pub fn is_involved_u64(n: u64) -> bool {
    n != 0 && matches!(n % 6, 1 | 4 | 5)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    OddForm(FormDecomposition),
    /// Evens only carry their residue mod 6.
    Even {
        residue6: u8,
        involved: bool,
    },
    /// Odd multiple of 3.
    NotInvolvedOdd,
}

pub fn classify(n: &BigUint) -> Classification {
    let inv = is_involved(n);
    if n.is_even() {
        Classification::Even {
            residue6: inv.residue6,
            involved: inv.involved,
        }
    } else if inv.involved {
        Classification::OddForm(odd_form_of(n).expect("involved odd"))
    } else {
        Classification::NotInvolvedOdd
    }
}

use serde::{Deserialize, Serialize};
use syracuse_forms::Form;

use crate::{enumerate_increasing_routes, Route};

/// Reference catalog of increasing anchored routes, as `(r, q)` sequences.
const CATALOG: &[&[(u8, u8)]] = &[
    &[(1, 0), (1, 1), (5, 1), (5, 2), (1, 0)],
    &[(1, 1), (5, 1), (5, 2), (1, 1)],
    &[(1, 1), (5, 1), (5, 2), (1, 0), (1, 1)],
    &[(1, 1), (5, 3), (5, 1), (5, 2), (1, 1)],
    &[(1, 1), (5, 3), (5, 1), (5, 2), (1, 0), (1, 1)],
    &[(1, 3), (5, 2), (1, 3)],
    &[(5, 1), (5, 2), (1, 0), (1, 1), (5, 3), (5, 1)],
    &[
        (5, 1),
        (5, 2),
        (1, 0),
        (1, 3),
        (5, 0),
        (1, 1),
        (5, 3),
        (5, 1),
    ],
    &[(5, 1), (5, 2), (1, 1), (5, 3), (5, 1)],
    &[(5, 1), (5, 2), (1, 3), (5, 2), (1, 1), (5, 3), (5, 1)],
    &[(5, 2), (1, 0), (1, 1), (5, 3), (5, 1), (5, 2)],
    &[(5, 2), (1, 0), (1, 1), (5, 1), (5, 2)],
    &[(5, 2), (1, 1), (5, 3), (5, 1), (5, 2)],
    &[(5, 2), (1, 1), (5, 1), (5, 2)],
    &[(5, 2), (1, 3), (5, 2)],
    &[(5, 3), (5, 3)],
    &[(5, 3), (5, 1), (5, 2), (1, 0), (1, 1), (5, 3)],
    &[
        (5, 3),
        (5, 1),
        (5, 2),
        (1, 0),
        (1, 3),
        (5, 0),
        (1, 1),
        (5, 3),
    ],
    &[(5, 3), (5, 1), (5, 2), (1, 1), (5, 3)],
    &[(5, 3), (5, 1), (5, 2), (1, 3), (5, 2), (1, 1), (5, 3)],
];

/// Catalog entries as form sequences (anchor first and last).
pub fn reference_catalog() -> Vec<Vec<Form>> {
    CATALOG
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(r, q)| Form::new(r, q).expect("valid form"))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorCount {
    pub anchor: Form,
    pub catalog: usize,
    pub enumerated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMiss {
    pub forms: Vec<Form>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub anchors: Vec<AnchorCount>,
    /// Catalog routes the enumeration does not produce.
    pub missing: Vec<CatalogMiss>,
    /// Enumerated routes the catalog does not list.
    pub extra: Vec<Route>,
}

impl CatalogReport {
    pub fn contains_catalog(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn catalog_report() -> CatalogReport {
    let catalog = reference_catalog();
    let mut anchors = Vec::new();
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for anchor in Form::ALL {
        let found = enumerate_increasing_routes(anchor);
        let listed: Vec<&Vec<Form>> = catalog.iter().filter(|c| c[0] == anchor).collect();
        anchors.push(AnchorCount {
            anchor,
            catalog: listed.len(),
            enumerated: found.len(),
        });
        for forms in &listed {
            if found.iter().any(|r| &r.forms() == *forms) {
                continue;
            }
            let reason = match Route::from_forms(forms) {
                Err(e) => e.to_string(),
                Ok(r) if !r.is_increasing() => format!("not increasing ({})", r.variation),
                Ok(_) => "valid but not enumerated".into(),
            };
            missing.push(CatalogMiss {
                forms: (*forms).clone(),
                reason,
            });
        }
        for r in found {
            if !listed.iter().any(|c| **c == r.forms()) {
                extra.push(r);
            }
        }
    }
    CatalogReport {
        anchors,
        missing,
        extra,
    }
}

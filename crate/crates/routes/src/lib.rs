//! Increasing triplets, anchored closed walks over the odd-form graph, and
//! the congruence chain on `k` that forces a walk to be followed.

mod catalog;
mod chain;
mod error;
mod route;
mod triplet;

pub use catalog::{catalog_report, reference_catalog, AnchorCount, CatalogMiss, CatalogReport};
pub use chain::{k0_chain, route_witness, CongruenceChain, RouteWitness};
pub use error::RouteError;
pub use route::{
    enumerate_all_routes, enumerate_increasing_routes, rotation_classes, route_dot, Route,
    Variation, MAX_ROUTE_LEN,
};
pub use triplet::{
    decimal_test, enumerate_increasing_triplets, triplet_domain, triplet_is_increasing, Triplet,
};

pub type Result<T> = std::result::Result<T, RouteError>;

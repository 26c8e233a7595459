//! Involvement classes mod 6 and the eight odd forms `r + 6(q + 4k)`.

mod error;
mod form;
mod graph;
mod ruler;

pub use error::FormError;
pub use form::{
    classify, is_involved, is_involved_u64, odd_form_of, Classification, Form, FormDecomposition,
    Involvement, VariationClass,
};
pub use graph::{
    construction_report, derive_edges, edge_for, form_graph, form_step, graph_dot, validate_edges,
    Affine, DivergenceKind, FormEdge, GraphReport, Mode, PrintedRow, StepOutcome, TableDivergence,
    PRINTED_ROWS,
};
pub use ruler::{filtered_ruler, ruler_stats, RulerReport};

pub type Result<T> = std::result::Result<T, FormError>;

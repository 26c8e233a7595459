use syracuse_forms::Form;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("no edge {from} -> {to}")]
    MissingEdge { from: Form, to: Form },
    #[error("{0} visited twice")]
    RepeatedForm(Form),
    #[error("walk does not return to its anchor")]
    NotClosed,
    #[error("walk of length {0} exceeds the limit")]
    TooLong(usize),
    #[error("empty walk")]
    Empty,
    #[error("no k satisfies step {step} of the chain")]
    Unrealizable { step: usize },
    #[error("bad variation {0:?}; expected \"3^n/2^m\"")]
    BadVariation(String),
}

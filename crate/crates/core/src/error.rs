use thiserror::Error;

use crate::mvcore::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the algebra, geometry, versor and neuron layers can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signature Cl({p},{q}): p + q must be at most 8")]
    InvalidSignature { p: usize, q: usize },

    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),

    #[error("grade error: {0}")]
    Grade(String),

    #[error("null vector has no inverse")]
    NullVector,

    #[error("not a versor: {0}")]
    NotVersor(String),

    #[error("singular versor: v * reverse(v) is zero")]
    SingularVersor,

    #[error("not exponentiable: argument does not square to a scalar")]
    NotExponentiable,

    #[error("point at infinity has no finite location")]
    PointAtInfinity,

    #[error("not a conformal point: {0}")]
    NotAPoint(String),

    #[error("metric error: {0}")]
    Metric(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bad multivector literal: {0}")]
    Literal(String),

    #[error("not a blade: {0}")]
    NotABlade(String),

    #[error("unknown object: {0}")]
    UnknownObject(String),

    #[error("flat object has no center or radius")]
    FlatObject,

    #[error("mixed parity: versor populates both even and odd grades")]
    MixedParity,

    #[error("parity/mode mismatch: {0}")]
    ParityMode(String),

    #[error("singular neuron weight: scalar part of W * reverse(W) is zero")]
    SingularWeight,

    #[error("training diverged at epoch {epoch} (loss {loss:e})")]
    Divergence {
        epoch: usize,
        loss: f64,
        history: Vec<f64>,
    },
}

use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not an odd prime below 2^63")]
    InvalidPrime(u64),
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("module has pieces up to degree {available}, degree {needed} required: extend module")]
    ExtendModule { needed: usize, available: usize },
    #[error("quadrics do not form a regular sequence: Hilbert function fails in degree {degree} (ideal dim {found}, expected {expected})")]
    NotRegularSequence {
        degree: usize,
        found: usize,
        expected: usize,
    },
    #[error("tangent module constructions disagree at genus {genus}, degree {degree}")]
    MethodMismatch { genus: usize, degree: usize },
    #[error("map `{map}` is not sl2-equivariant ({defect} nonzero commutator entries)")]
    NotEquivariant { map: String, defect: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Betti table covers p <= {pmax}, q <= {qmax}; need {what}")]
    TableRange {
        pmax: usize,
        qmax: usize,
        what: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

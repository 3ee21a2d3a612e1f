use thiserror::Error;

use crate::structure::Obstruction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("vector is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("subspace is not graded: splitting the spanning set into parity components enlarges its span")]
    NotGraded,

    #[error("subspace is not an ideal: [{}, {}] leaves it", .witness.0, .witness.1)]
    NotAnIdeal { witness: (String, String) },

    #[error("invalid structure constants at {witness:?}: {reason}")]
    InvalidStructure { reason: String, witness: Vec<String> },

    #[error("invalid bilinear form at {witness:?}: {reason}")]
    InvalidForm { reason: String, witness: Vec<String> },

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("form is not invariant: B([X,Y],Z) != B(X,[Y,Z]) at {witness:?}")]
    NotInvariant { witness: Vec<String> },

    #[error("cochain is not a 2-cocycle: identity fails at {witness:?}")]
    NotCocycle { witness: Vec<String> },

    #[error("cochain is not supercyclic: identity fails at {witness:?}")]
    NotSupercyclic { witness: Vec<String> },

    #[error("3-cochain is not closed: identity fails at {witness:?}")]
    NotClosed { witness: Vec<String> },

    #[error("invalid cochain at {witness:?}: {reason}")]
    InvalidCochain { reason: String, witness: Vec<String> },

    #[error("the Lie superalgebra axioms fail: {0}")]
    AxiomsFail(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no rational point found: {0}")]
    RationalPointNotFound(Obstruction),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("unknown gallery name `{0}`")]
    UnknownName(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

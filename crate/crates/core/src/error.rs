use thiserror::Error;

use crate::face::Face;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} outside ground set 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("ground set of size {0} exceeds the supported maximum of 64 vertices")]
    GroundSetTooLarge(usize),

    #[error("complex is not pure")]
    NotPure,

    #[error("expected a pure complex of dimension {expected}, found {found}")]
    WrongDimension { expected: isize, found: isize },

    #[error("face {0:?} is not in the complex")]
    NotAFace(Face),

    #[error("face {0:?} is not a ridge of the complex")]
    NotARidge(Face),

    #[error("face {0:?} is not a free ridge of the base complex")]
    NotAFreeRidge(Face),

    #[error("complex has no facets")]
    Void,

    #[error("join arguments share vertices {0:?}")]
    OverlappingSupports(Face),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix of {rows}x{cols} exceeds the configured size bound of {limit} entries")]
    MatrixTooLarge { rows: usize, cols: usize, limit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("self-test failed: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

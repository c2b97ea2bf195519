use thiserror::Error;

/// Errors raised by the polytope, counting and enumeration routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph is not perfect")]
    NotPerfect,
    #[error("graph is not CIS")]
    NotCis,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("polytope is not full-dimensional (affine dimension {dim} in ambient dimension {ambient})")]
    Degenerate { dim: usize, ambient: usize },
    #[error("simplex is degenerate")]
    DegenerateSimplex,
    #[error("point set is not a lattice polytope")]
    NotLattice,
    #[error("poset relation contains a cycle")]
    CyclicRelation,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Ehrhart profile is inconsistent: {0}")]
    InconsistentProfile(String),
    #[error("reduction step cap of {0} exceeded")]
    StepCapExceeded(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn size_limit(msg: impl Into<String>) -> Error {
    Error::SizeLimit(msg.into())
}

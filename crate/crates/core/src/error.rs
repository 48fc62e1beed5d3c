use thiserror::Error;

/// Errors raised by the geometric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no primitive part")]
    ZeroVector,
    #[error("degenerate cone")]
    DegenerateCone,
    #[error("cone contains a line")]
    NotPointed,
    #[error("lattice length undefined")]
    NonIntegral,
    #[error("not full-dimensional")]
    NotFullDimensional,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dilation factor must be positive")]
    NonPositiveFactor,
    #[error("support undefined: the Fine interior is empty")]
    EmptyFineInterior,
    #[error("support incomplete: ray {0} is missing")]
    SupportIncomplete(String),
    #[error("no adjoint facet")]
    NoAdjointFacet,
    #[error("divisor is not Cartier on this fan")]
    NotCartier,
    #[error("Q-Cartier index exceeds {0}")]
    IndexOverflow(u64),
    #[error("polytope is not canonically closed")]
    NotCanonicallyClosed,
    #[error("kept points outside the sublattice: {0}")]
    OutsideSublattice(String),
    #[error("plane does not separate the polytope")]
    NotSeparating,
    #[error("wrong class: {0}")]
    WrongClass(String),
    #[error("unknown Fine-interior type")]
    UnknownType,
    #[error("unknown atlas entry {0}")]
    UnknownEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

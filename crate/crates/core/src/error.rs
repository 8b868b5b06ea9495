use thiserror::Error;

use crate::hyperbolic::GeodesicRelation;
use crate::vec::CausalClass;

/// Errors reported by the kernel operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// Operands live in different coordinate charts.
    #[error("chart mismatch between operands")]
    ChartMismatch,
    /// A spacelike vector was required.
    #[error("expected a spacelike vector, got {0}")]
    NotSpacelike(CausalClass),
    /// A point of the hyperboloid model was required.
    #[error("expected a future unit timelike vector, got {0}")]
    NotHyperbolicPoint(CausalClass),
    /// A direction vector was zero.
    #[error("zero direction vector")]
    ZeroDirection,
    /// The map is not an orientation-preserving conformal transformation.
    #[error("not an orientation-preserving conformal map")]
    NotConformal,
    /// The director pair is not consistently oriented.
    #[error("directors are not consistently oriented")]
    NotConsistentlyOriented,
    /// The geodesic relation is outside the supported cases.
    #[error("unsupported geodesic relation {0}")]
    UnsupportedRelation(GeodesicRelation),
    /// The query point is not inside the (open) halfspace.
    #[error("point is not in the open crooked halfspace")]
    OutsideHalfspace,
    /// The query point is outside the foliated slab.
    #[error("point is outside the foliated slab: {0}")]
    OutsideFoliation(String),
    /// A foliation coefficient was not strictly positive.
    #[error("foliation coefficient not strictly positive at t = {0}")]
    NonPositiveCoefficient(f64),
    /// Exact rational evaluation is impossible for these inputs.
    #[error("exact mode unavailable: {0}")]
    ExactUnavailable(String),
    /// Generic input validation failure.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

use thiserror::Error;

use crate::polyalg::{WeightSystem, NVARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos} (expected x1..x4)")]
    UnknownVariable { pos: usize, name: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("invalid weights {weights:?}: {reason}")]
    InvalidWeights {
        weights: [u32; NVARS],
        reason: String,
    },
    #[error("degree must be positive")]
    InvalidDegree,
    #[error("no Fermat member for {ws}: weight of x{variable} does not divide the degree")]
    NoFermatMember { ws: WeightSystem, variable: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("polynomial is not weighted homogeneous")]
    NotHomogeneous,
    #[error("polynomial has degree {found}, expected {expected}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("hypersurface is not quasi-smooth (Jacobian ideal is not zero-dimensional)")]
    NotQuasiSmooth,
    #[error("Jacobian ring is zero (a partial derivative is a unit)")]
    ZeroRing,
    #[error("socle in degree {degree} has dimension {dim}, expected 1")]
    SocleNotOneDimensional { degree: u32, dim: usize },
    #[error("degree {degree} lies outside the cached band 0..={top}")]
    DegreeOutOfBand { degree: i64, top: u32 },
    #[error("no quasi-smooth member found for {ws} after {attempts} attempts")]
    Exhausted { ws: WeightSystem, attempts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("operation needs h20 = 2, found h20 = {0}")]
    NotContact(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("matrix is not an orthogonal complex structure: {0}")]
    InvalidComplexStructure(String),
    #[error("consistency violation: {0}")]
    Consistency(String),
}

use thiserror::Error;

/// Errors raised by the kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("axis {axis} out of range for a chart of dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },

    #[error("total degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("tensor fields live on different charts")]
    ChartMismatch,

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("cannot contract a vector field into a function")]
    ContractFunction,

    #[error("degree {degree} is outside 0..={dim} for this operation")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("unsupported dimension {dim}: expected 2..=6")]
    UnsupportedDim { dim: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("2-form is not closed: d(omega) = {witness}")]
    NotClosed { witness: String },

    #[error("N composed with pi# is not antisymmetric: {witness}")]
    NotAntisymmetric { witness: String },

    #[error("structure is not Poisson quasi-Nijenhuis; failing checks: {failing}")]
    InvalidStructure { failing: String },

    #[error("Lagrangian subbundle is not transversal to the cotangent bundle")]
    NotTransversal,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

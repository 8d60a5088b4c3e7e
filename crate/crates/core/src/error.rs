use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("outside the domain of a field rule: {0}")]
    Domain(String),

    #[error("degenerate plane: Gram determinant {0:e}")]
    DegeneratePlane(f64),

    #[error("f-basis construction degenerated: {0}")]
    DegenerateBasis(String),

    #[error("tangency residual {residual:e} exceeds {tol:e} for {what}")]
    NotTangent {
        what: String,
        residual: f64,
        tol: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

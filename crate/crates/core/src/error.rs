use thiserror::Error;

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("basis vectors are coplanar (|det| = {volume:e}, threshold {threshold:e})")]
    DegenerateBasis { volume: f64, threshold: f64 },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("empty vector system")]
    EmptyInput,

    #[error("index {index} out of range 1..=3")]
    IndexOutOfRange { index: usize },

    #[error("axis vector is zero")]
    ZeroAxis,

    #[error("invalid form: {0}")]
    InvalidForm(&'static str),

    #[error("form not representable: {0}")]
    NotRepresentable(&'static str),

    #[error("planes are parallel")]
    ParallelPlanes,

    #[error("invalid shape parameters: {0}")]
    InvalidShape(&'static str),

    #[error("point is not on the curve (residual {residual:e})")]
    PointNotOnCurve { residual: f64 },

    #[error("a circle has no directrix")]
    UndefinedForCircle,

    #[error("equation is not of second order")]
    NotSecondOrder,

    #[error("matrix is not orthogonal (deviation {deviation:e})")]
    NonOrthogonalRotation { deviation: f64 },
}

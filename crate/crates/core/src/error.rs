use crate::states::PositivityCondition;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid local dimension {0}: at least 2 levels are required")]
    InvalidDimension(usize),
    #[error("subsystem index {index} out of range for {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },
    #[error("empty subsystem selection")]
    EmptySelection,
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("hermiticity check failed: max deviation {0:e}")]
    NotHermitian(f64),
    #[error("trace check failed: trace is {0}")]
    BadTrace(f64),
    #[error("positivity check failed: minimum eigenvalue {0:e}")]
    NotPositive(f64),
    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("rotation axis is not a unit vector (norm {0})")]
    NonUnitAxis(f64),
    #[error("Werner weight {alpha} outside the physical range [{min}, 1]")]
    WeightOutOfRange { alpha: f64, min: f64 },
    #[error("unphysical family point: {0} is violated")]
    Unphysical(PositivityCondition),
    #[error("closed-form partial-transpose spectrum needs integer spin (odd d >= 3), got d = {0}; use the numeric partial transpose")]
    UnsupportedSpin(usize),
    #[error("too many subsystems: {found} exceeds the limit of {limit}")]
    TooManySubsystems { found: usize, limit: usize },
    #[error("the family tetrahedron is unbounded for d = {0}")]
    UnboundedRegion(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

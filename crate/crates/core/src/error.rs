use thiserror::Error;

/// Every failure the engine can report, one variant per named error condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("denominator vanishes at the sample point {0}")]
    PoleAtSample(String),
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    #[error("weight multiplicity greater than one: {0}")]
    MultiplicityUnsupported(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("normalization does not determine the braiding: {0}")]
    NormalizationInsufficient(String),
    #[error("derived braiding disagrees with direct solve: {0}")]
    DualityCheckFailed(String),
    #[error("degree limit exceeded: {0}")]
    DegreeLimit(String),
    #[error("element is not central: {0}")]
    CentralityFailed(String),
    #[error("projection identity failed: {0}")]
    ProjectionFailed(String),
    #[error("star structure mismatch: {0}")]
    StarMismatch(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("bimodule identity failed: {0}")]
    BimoduleIdentityFailed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("prolongation incomplete: {0}")]
    ProlongationIncomplete(String),
    #[error("reality check failed: {0}")]
    RealityFailed(String),
    #[error("usage error: {0}")]
    UsageError(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 for bad input, 1 for a failed verification, 3 for
    /// internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UsageError(_) | Error::Parse(_) | Error::UnsupportedType(_) => 2,
            Error::DualityCheckFailed(_)
            | Error::CentralityFailed(_)
            | Error::ProjectionFailed(_)
            | Error::StarMismatch(_)
            | Error::IdentityFailed(_)
            | Error::BimoduleIdentityFailed(_)
            | Error::DimensionMismatch(_)
            | Error::ProlongationIncomplete(_)
            | Error::RealityFailed(_)
            | Error::PoleAtSample(_) => 1,
            _ => 3,
        }
    }
}

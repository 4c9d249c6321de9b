use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator: not a field element")]
    ZeroDenominator,
    #[error("rational function has a pole at q = 1")]
    PoleAtOne,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dominance is only defined for equal weights ({0} vs {1})")]
    WeightMismatch(u32, u32),
    #[error("partition {part} does not fit in the rectangle ({k}^{s})")]
    DoesNotFit { part: Partition, k: u32, s: u32 },
    #[error("the zero partition has no rectangular filtration")]
    ZeroPartition,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("shape {0} is not rectangular")]
    NotRectangular(Partition),
    #[error("shape {0} is not almost rectangular")]
    NotAlmostRectangular(Partition),
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

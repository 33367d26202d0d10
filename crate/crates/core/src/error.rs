use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("not a rational number: {0:?}")]
    Rational(String),
    #[error("not a partition (expected e.g. [3,2,2,1]): {0:?}")]
    Partition(String),
    #[error("not a type/rank (expected e.g. C3, D4): {0:?}")]
    TypeRank(String),
    #[error("not a flag type (expected e.g. (1,2,1)): {0:?}")]
    FlagType(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{family}{rank} is not a simple classical Lie algebra")]
    UnsupportedRank { family: char, rank: usize },
    #[error("partition {partition} has total {found}, but {type_rank} acts on dimension {expected}")]
    TotalMismatch {
        type_rank: String,
        partition: String,
        expected: usize,
        found: usize,
    },
    #[error("partition {partition} does not label a nilpotent orbit of {type_rank}")]
    InvalidPartition { type_rank: String, partition: String },
    #[error("{op} is not defined for type {type_rank}")]
    WrongFamily { op: &'static str, type_rank: String },
    #[error("flag type {flag_type} is not valid for {type_rank}")]
    InvalidFlagType { type_rank: String, flag_type: String },
    #[error("sequence {values:?} sums to {found}, expected {expected}")]
    SumMismatch {
        values: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("matrix size {found} does not match ambient dimension {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix of size {size} is not nilpotent (x^{size} != 0)")]
    NotNilpotent { size: usize },
    #[error("element is not in the Lie algebra {type_rank}")]
    NotInAlgebra { type_rank: String },
    #[error("Richardson sampling did not reach genericity; observed {observed:?}")]
    Genericity { observed: Vec<(String, usize)> },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("invalid run configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

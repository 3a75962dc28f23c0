use thiserror::Error;

/// Why a precondition of the blowup theorem does not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreconditionReason {
    NotArf,
    MultiplicityDrops,
}

impl std::fmt::Display for PreconditionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PreconditionReason::NotArf => f.write_str("semigroup is not Arf"),
            PreconditionReason::MultiplicityDrops => f.write_str("blowup multiplicity drops"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,

    #[error("generators have gcd {gcd}, complement in N is infinite")]
    NonCofinite { gcd: i64 },

    #[error("invalid generator {0}: generators must be positive")]
    InvalidEntry(i64),

    #[error("generator {max} too large: membership table would need {needed} entries")]
    TooLarge { max: i64, needed: u64 },

    #[error("{0} is not an element of the semigroup")]
    NotMember(i64),

    #[error("semigroup is not Arf")]
    NotArf,

    #[error("precondition failed: {0}")]
    PreconditionFailed(PreconditionReason),

    #[error("{count} unmatched face(s) fit no type at i={i}, s={s} (first: {first:?})")]
    ClassificationGap {
        i: usize,
        s: i64,
        count: usize,
        first: Vec<usize>,
    },

    #[error("complex on {vertices} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { vertices: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The matrix is not square or has no rows.
    MalformedGram(String),
    /// Asymmetric entry pair.
    NonIntegralGram {
        row: usize,
        col: usize,
    },
    /// A leading principal minor is not positive (1-based index).
    NotPositiveDefinite {
        minor: usize,
        value: BigInt,
    },
    UnsupportedFamilyRank {
        family: &'static str,
        rank: usize,
    },
    /// A scaling factor of zero.
    InvalidScale,
    /// Gram entries or coefficients left the machine-integer range used by
    /// the enumerators.
    EntryOverflow,
    /// The configured work ceiling was hit before the computation finished.
    ResourceLimitExceeded {
        what: &'static str,
        limit: u64,
    },
    InsufficientTruncation {
        available: u64,
        requested: u64,
    },
    RankTooSmall {
        rank: usize,
        minimum: usize,
    },
    EvenArgument(u64),
    TailNotCertifiable {
        tau: f64,
    },
    SizeExceedsClassification {
        rank: usize,
        size: usize,
    },
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedGram(msg) => write!(f, "malformed Gram matrix: {msg}"),
            Error::NonIntegralGram { row, col } => {
                write!(f, "Gram matrix is not symmetric at ({row}, {col})")
            }
            Error::NotPositiveDefinite { minor, value } => write!(
                f,
                "Gram matrix is not positive definite: leading minor {minor} is {value}"
            ),
            Error::UnsupportedFamilyRank { family, rank } => {
                write!(f, "family {family} is not defined at rank {rank}")
            }
            Error::InvalidScale => f.write_str("scaling factor must be a positive integer"),
            Error::EntryOverflow => {
                f.write_str("Gram entries too large for exact machine-integer enumeration")
            }
            Error::ResourceLimitExceeded { what, limit } => {
                write!(f, "{what} exceeded the limit of {limit}")
            }
            Error::InsufficientTruncation { available, requested } => write!(
                f,
                "census only complete up to norm {available}, {requested} requested"
            ),
            Error::RankTooSmall { rank, minimum } => {
                write!(f, "rank {rank} is below the minimum {minimum}")
            }
            Error::EvenArgument(k) => write!(f, "argument {k} must be odd"),
            Error::TailNotCertifiable { tau } => {
                write!(f, "Gaussian tail not certifiable at tau = {tau}")
            }
            Error::SizeExceedsClassification { rank, size } => write!(
                f,
                "root system component of rank {rank} has {size} vectors, more than any irreducible root system allows"
            ),
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

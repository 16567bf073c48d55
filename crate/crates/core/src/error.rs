use thiserror::Error;

use crate::classify::MatrixType;

/// Errors produced by graph construction and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} too large (maximum supported prime is 251)")]
    ModulusTooLarge(u64),

    #[error("no inverse: zero has no multiplicative inverse")]
    NoInverse,

    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("irreducibility test only supports degrees 1 to 3, got degree {0}")]
    UnsupportedDegree(usize),

    #[error("phi undefined for vertices of type ({0})")]
    PhiUndefined(MatrixType),

    #[error("brute-force {what} refused at p = {p}: only p in {{{supported}}} is enumerable")]
    OracleRefused {
        what: &'static str,
        p: u64,
        supported: &'static str,
    },

    #[error("Table 2 violated: {0}")]
    Table2Violated(String),

    #[error("graph has no matrix labels; build it from the brute-force oracle first")]
    NotMatrixLabeled,

    #[error("bad edge list: {0}")]
    BadEdgeList(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

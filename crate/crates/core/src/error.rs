use thiserror::Error;

/// Errors raised by the counting routines.
///
/// Every variant renders as a single line so callers can forward it as a
/// machine-parsable reason.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// The sublattice `2n^a <= i <= n^(1-a)` has no columns for this `n`.
    #[error("sublattice empty: n={n} is below n0 for alpha={alpha} (iMin={i_min} > W={width})")]
    EmptySublattice {
        n: u64,
        alpha: String,
        i_min: u64,
        width: u64,
    },

    /// A dense table or bitset would exceed its memory ceiling.
    #[error("capacity: {what} needs {requested} entries, ceiling is {ceiling}")]
    Capacity {
        what: &'static str,
        requested: u128,
        ceiling: u128,
    },

    /// A brute-force oracle was asked to run above its size ceiling.
    #[error("size: {what} has {requested} items, oracle ceiling is {ceiling}")]
    Size {
        what: &'static str,
        requested: u128,
        ceiling: u128,
    },

    /// A query falls outside a precomputed table.
    #[error("out of range: {value} exceeds table limit {limit}")]
    OutOfRange { value: u64, limit: u64 },

    /// A wide accumulator would have wrapped.
    #[error("overflow: {0}")]
    Overflow(&'static str),

    /// An exact identity or inequality chain failed. This is a defect in the
    /// counting code, never a property of the input.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A sieve cache file is malformed or belongs to a different limit.
    #[error("cache: {0}")]
    Cache(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Capacity,
    Defect,
    Io,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Domain(_) | Error::EmptySublattice { .. } | Error::OutOfRange { .. } => {
                ErrorClass::Validation
            }
            Error::Capacity { .. } | Error::Size { .. } | Error::Overflow(_) => {
                ErrorClass::Capacity
            }
            Error::Invariant(_) => ErrorClass::Defect,
            Error::Cache(_) | Error::Io(_) => ErrorClass::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_capacity(what: &'static str, requested: u128, ceiling: u128) -> Result<()> {
    if requested > ceiling {
        Err(Error::Capacity {
            what,
            requested,
            ceiling,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn ensure_size(what: &'static str, requested: u128, ceiling: u128) -> Result<()> {
    if requested > ceiling {
        Err(Error::Size {
            what,
            requested,
            ceiling,
        })
    } else {
        Ok(())
    }
}

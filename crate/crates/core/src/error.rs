//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A characteristic argument was not a prime number.
    NotPrime(u64),
    /// A multi-index with a zero entry where a partition was required.
    ZeroEntry,
    /// Multiset difference `lambda \ mu` with `mu` not embedded in `lambda`.
    NotEmbedded,
    /// Gathering indices out of range or not strictly increasing.
    IndexOutOfRange { i: usize, j: usize, len: usize },
    /// A coboundary of order `m` applied to a polynomial in fewer than `m`
    /// variables.
    DimensionTooSmall { m: usize, dim: usize },
    /// No admissible power-of-`p` source length exists for the requested
    /// degree and dimension.
    NoSource { n: u64, k: usize, p: u64 },
    /// A support component of the kernel was not one-dimensional.  For the
    /// 2-coboundary this contradicts a proven fact and is always an error;
    /// for higher coboundaries callers downgrade it to a report entry.
    SplitAnomaly { dim: usize, detail: String },
    /// An element produced by the constructive classification failed the
    /// cocycle check.  Indicates a bug, never expected at runtime.
    NotACocycle { n: u64, k: usize, p: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroEntry => write!(f, "multi-index has a zero entry"),
            Error::NotEmbedded => write!(f, "multiset difference: subtrahend not embedded"),
            Error::IndexOutOfRange { i, j, len } => {
                write!(f, "gather indices ({i}, {j}) invalid for length {len}")
            }
            Error::DimensionTooSmall { m, dim } => {
                write!(f, "coboundary order {m} exceeds dimension {dim}")
            }
            Error::NoSource { n, k, p } => {
                write!(
                    f,
                    "no power-of-{p} source length for degree {n}, dimension {k}"
                )
            }
            Error::SplitAnomaly { dim, detail } => {
                write!(f, "kernel component of dimension {dim} ({detail})")
            }
            Error::NotACocycle { n, k, p } => {
                write!(
                    f,
                    "constructive element for (n={n}, k={k}, p={p}) is not a cocycle"
                )
            }
        }
    }
}

impl core::error::Error for Error {}

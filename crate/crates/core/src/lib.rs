//! Exact computation with additive symmetric cocycles over prime fields.
//!
//! A symmetric polynomial `f` in `k` variables is an additive symmetric
//! 2-cocycle when
//!
//! ```text
//! f(x1, x2, ..., xk) - f(x0 + x1, x2, ..., xk)
//!                    + f(x0, x1 + x2, x3, ..., xk) - f(x0, x1, x3, ..., xk) = 0.
//! ```
//!
//! Over `Z_p` the space of such polynomials in each homogeneous degree and
//! variable count has a basis described entirely by base-`p` carry
//! combinatorics of integer partitions.  This crate provides:
//!
//! - [`multiindex`]: multi-indices, partitions, carry counts, digital sums,
//!   base-`p` splitting distance, and gathering operators;
//! - [`polyring`]: exact symmetric/asymmetric polynomial arithmetic over `Z`
//!   and `F_p`, the coboundary maps `delta_m`, and the integral cocycles
//!   `zeta_k^n` with their mod-`p` projections;
//! - [`classify`]: the constructive cocycle basis built from gathering orbits
//!   of power-of-`p` partitions, annihilating sets, and the generator/torsion
//!   summary of the representing ring;
//! - [`oracle`]: a theorem-independent ground truth that materializes the
//!   coboundary map as a sparse matrix over `F_p` and computes its exact
//!   nullspace;
//! - [`counting`]: generating-function counts of power-of-`p` partitions and
//!   the extended cocycle count.
//!
//! All values are exact; there is no floating point anywhere.  Every
//! operation is a pure function on immutable values and is safe to call
//! concurrently.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classify;
pub mod counting;
pub mod error;
pub mod multiindex;
pub mod oracle;
pub mod polyring;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

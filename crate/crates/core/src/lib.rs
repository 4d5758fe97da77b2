//! Exact simulation and closed-form analysis of the one-dimensional
//! two-state quantum walk driven by an arbitrary 2×2 unitary coin.
//!
//! The crate is organised bottom-up:
//!
//! - [`coin`]: coin matrices, initial qubit states and the `P, Q, R, S`
//!   product algebra.
//! - [`paths`]: the path sum `Ξ(l, m)` by brute-force enumeration and by its
//!   binomial closed forms.
//! - [`walk`]: banded time evolution of the amplitude field. This is the
//!   oracle every closed form is checked against.
//! - [`analytic`]: closed-form position probabilities, characteristic
//!   functions and moments.
//! - [`symmetry`]: classification of initial states whose distribution is
//!   symmetric for all times.
//! - [`special`]: Gauss hypergeometric series and Jacobi polynomials.
//! - [`limit`]: the scaling limit of `X_n / n` and weak-convergence
//!   diagnostics.
//!
//! ```
//! use qwalk::{coin::{Coin, Qubit}, walk};
//!
//! let dist = walk::distribution(&Coin::hadamard(), &Qubit::symmetric(), 4);
//! assert!((dist.prob(2) - 6.0 / 16.0).abs() < 1e-12);
//! ```

pub mod analytic;
pub mod coin;
pub mod error;
pub mod limit;
mod numeric;
pub mod paths;
pub mod quad;
pub mod special;
pub mod symmetry;
pub mod walk;

#[cfg(test)]
pub(crate) mod test_util;

pub use error::{Result, WalkError};
pub use numeric::binomial;

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;

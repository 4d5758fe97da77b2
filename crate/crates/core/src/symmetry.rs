//! Initial states whose position law is symmetric at every time.
//!
//! For a generic coin three descriptions coincide: the algebraic condition
//! `|α| = |β| = 1/√2` with vanishing cross term, mirror symmetry of every
//! distribution, and zero mean at every time. Each is exposed separately so
//! the equality can be checked extensionally.

use crate::analytic::{moment_with, SumRoute, WalkParams};
use crate::coin::{Coin, Qubit};
use crate::error::Result;
use crate::walk;

/// Default membership tolerance for [`classify`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Largest asymmetry still counted as symmetric by [`SymmetryVerdict`].
pub const ASYMMETRY_TOL: f64 = 1e-10;

/// Largest `|E(X_n)|` still counted as zero by [`mean_zero_check`].
pub const MEAN_TOL: f64 = 1e-10;

/// Mirror asymmetry observed on the engine's distributions.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryVerdict {
    /// True iff every recorded asymmetry is at most [`ASYMMETRY_TOL`].
    pub in_phi_perp: bool,
    /// `(n, max_k |P(X_n = k) - P(X_n = -k)|)` for `n = 1..=n_max`.
    pub evidence: Vec<(usize, f64)>,
}

/// Algebraic membership: `||α| - 1/√2| < tol`, `||β| - 1/√2| < tol` and
/// `|aα conj(bβ) + conj(aα) bβ| < tol`.
pub fn classify(coin: &Coin, qubit: &Qubit, tol: f64) -> Result<bool> {
    coin.require_generic("symmetry classification")?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let cross = WalkParams::new(*coin, *qubit).cross();
    Ok((qubit.alpha().norm() - h).abs() < tol && (qubit.beta().norm() - h).abs() < tol && cross.abs() < tol)
}

/// Runs the engine to `n_max` and records the mirror asymmetry at each step.
pub fn verify_symmetry(coin: &Coin, qubit: &Qubit, n_max: usize) -> SymmetryVerdict {
    let mut field = walk::init(qubit);
    let mut evidence = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        field = walk::step(coin, &field);
        evidence.push((n, walk::Distribution::from(&field).max_asymmetry()));
    }
    let in_phi_perp = evidence.iter().all(|&(_, a)| a <= ASYMMETRY_TOL);
    SymmetryVerdict { in_phi_perp, evidence }
}

/// True iff the closed-form mean vanishes for every `1 <= n <= n_max`.
///
/// `n_max` below 3 is raised to 3: the first two means alone cannot separate
/// `μ = 0` from symmetry.
pub fn mean_zero_check(coin: &Coin, qubit: &Qubit, n_max: usize) -> bool {
    let params = WalkParams::new(*coin, *qubit);
    (1..=n_max.max(3)).all(|n| moment_with(&params, n, 1, SumRoute::for_n(n)).is_ok_and(|mean| mean.abs() <= MEAN_TOL))
}

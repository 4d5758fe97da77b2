//! Gauss hypergeometric series, Jacobi polynomials and the identities that
//! turn the walk's alternating binomial sums into Jacobi values.
//!
//! Two Jacobi evaluators are provided. [`jacobi_p`] sums the terminating
//! series `P_n^{ν,μ}(x) = Γ(n+ν+1)/(Γ(n+1)Γ(ν+1)) ₂F₁(-n, n+ν+μ+1; ν+1; (1-x)/2)`
//! and is exact in structure but its terms alternate and grow with the
//! degree. [`jacobi_p_recurrence`] runs the three-term recurrence in the
//! degree, which stays accurate where the series cancels; the walk's
//! `ρ_{n,k,i}` values use it.

use crate::coin::Coin;
use crate::error::{Result, WalkError};
use crate::numeric::{binomial, Neumaier};

/// Term cap for non-terminating hypergeometric series.
pub const SERIES_TERM_CAP: usize = 1_000_000;

/// Relative size of the last term at which a non-terminating series stops.
const SERIES_REL_TOL: f64 = 1e-16;

/// `Γ(x)`.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// Parameters of `₂F₁(a, b; c; z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypergeomArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypergeomArgs {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        HypergeomArgs { a, b, c, z }
    }

    /// Degree of the polynomial when `a` or `b` is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<u64> {
        match (non_positive_integer(self.a), non_positive_integer(self.b)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }
}

fn non_positive_integer(x: f64) -> Option<u64> {
    (x <= 0.0 && x.fract() == 0.0).then(|| (-x) as u64)
}

/// `₂F₁(a, b; c; z) = Σ_j (a)_j (b)_j / ((c)_j j!) z^j`.
///
/// Terminating series are summed term by term to the last term. Otherwise
/// `|z| < 1` is required and summation stops once a term drops below
/// `1e-16` of the partial sum.
pub fn gauss_2f1(args: &HypergeomArgs) -> Result<f64> {
    let HypergeomArgs { a, b, c, z } = *args;
    let degree = args.terminating_degree();
    if let Some(pole) = non_positive_integer(c) {
        // Term j + 1 divides by (c + j); the series is safe only if it ends first.
        if degree.is_none_or(|d| d > pole) {
            return Err(WalkError::PoleAtC(c));
        }
    }
    let mut sum = Neumaier::default();
    let mut term = 1.0;
    sum.add(term);
    let ratio = |j: f64| (a + j) * (b + j) / ((c + j) * (j + 1.0)) * z;
    match degree {
        Some(d) => {
            for j in 0..d {
                term *= ratio(j as f64);
                sum.add(term);
            }
            Ok(sum.value())
        }
        None => {
            if z.is_nan() || z.abs() >= 1.0 {
                return Err(WalkError::NonConvergent(0));
            }
            for j in 0..SERIES_TERM_CAP {
                term *= ratio(j as f64);
                sum.add(term);
                if term.abs() <= SERIES_REL_TOL * sum.value().abs() {
                    return Ok(sum.value());
                }
            }
            Err(WalkError::NonConvergent(SERIES_TERM_CAP))
        }
    }
}

/// `|₂F₁(a, b; c; z) - (1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))|`.
pub fn pfaff_check(args: &HypergeomArgs) -> Result<f64> {
    let HypergeomArgs { a, b, c, z } = *args;
    if z == 1.0 {
        return Err(WalkError::InvalidArgument(
            "Pfaff transform is singular at z = 1".into(),
        ));
    }
    let lhs = gauss_2f1(args)?;
    let rhs = (1.0 - z).powf(-a) * gauss_2f1(&HypergeomArgs::new(a, c - b, c, z / (z - 1.0)))?;
    Ok((lhs - rhs).abs())
}

/// Arguments of `P_degree^{ν, μ}(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiArgs {
    pub degree: usize,
    pub nu: f64,
    pub mu: f64,
    pub x: f64,
}

impl JacobiArgs {
    pub fn new(degree: usize, nu: f64, mu: f64, x: f64) -> Self {
        JacobiArgs { degree, nu, mu, x }
    }
}

/// Jacobi polynomial through its terminating hypergeometric representation.
pub fn jacobi_p(args: &JacobiArgs) -> Result<f64> {
    let JacobiArgs { degree, nu, mu, x } = *args;
    let n = degree as f64;
    let norm = gamma(n + nu + 1.0) / (gamma(n + 1.0) * gamma(nu + 1.0));
    let series = gauss_2f1(&HypergeomArgs::new(-n, n + nu + mu + 1.0, nu + 1.0, (1.0 - x) / 2.0))?;
    Ok(norm * series)
}

/// Jacobi polynomial through the standard three-term recurrence in the degree.
pub fn jacobi_p_recurrence(args: &JacobiArgs) -> f64 {
    let JacobiArgs {
        degree,
        nu: al,
        mu: be,
        x,
    } = *args;
    let p1 = (al + 1.0) + (al + be + 2.0) * (x - 1.0) / 2.0;
    match degree {
        0 => 1.0,
        1 => p1,
        _ => {
            let (mut prev, mut cur) = (1.0, p1);
            for m in 2..=degree {
                let m = m as f64;
                let s = 2.0 * m + al + be;
                let lead = 2.0 * m * (m + al + be) * (s - 2.0);
                let mid = (s - 1.0) * (s * (s - 2.0) * x + al * al - be * be);
                let back = 2.0 * (m + al - 1.0) * (m + be - 1.0) * s;
                let next = (mid * cur - back * prev) / lead;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `ρ_{n,k,i} = P_{k-1}^{i, n-2k}(2|a|² - 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhoValue {
    pub n: usize,
    pub k: usize,
    pub i: u8,
    pub value: f64,
}

/// Evaluates `ρ_{n,k,i}` for `1 <= k <= n/2`, `i ∈ {0, 1}`.
pub fn rho(abs_a_sq: f64, n: usize, k: usize, i: u8) -> Result<RhoValue> {
    if k < 1 || 2 * k > n || i > 1 {
        return Err(WalkError::InvalidArgument(format!(
            "rho needs 1 <= k <= n/2 and i in {{0, 1}}, got n={n} k={k} i={i}"
        )));
    }
    let args = JacobiArgs::new(k - 1, i as f64, (n - 2 * k) as f64, 2.0 * abs_a_sq - 1.0);
    Ok(RhoValue {
        n,
        k,
        i,
        value: jacobi_p_recurrence(&args),
    })
}

/// Both sides of the binomial-sum/Jacobi identity at `|a|²`:
///
/// ```text
/// Σ_{γ=1}^{k} (-|b|²/|a|²)^{γ-1} w_γ C(k-1, γ-1) C(n-k-1, γ-1)
///     = |a|^{-2(k-1)} ρ_{n,k,i} / (k if i = 1 else 1)
/// ```
///
/// with `w_γ = 1/γ` for `i = 1` and `w_γ = 1` for `i = 0`.
pub fn combinatorial_jacobi_identity_at(abs_a_sq: f64, n: usize, k: usize, i: u8) -> Result<(f64, f64)> {
    if !(abs_a_sq > 0.0 && abs_a_sq < 1.0) {
        return Err(WalkError::InvalidArgument(format!(
            "|a|^2 = {abs_a_sq} must lie in (0, 1)"
        )));
    }
    let rho = rho(abs_a_sq, n, k, i)?.value;
    let ratio = -(1.0 - abs_a_sq) / abs_a_sq;
    let lhs = (1..=k)
        .map(|g| {
            let w = if i == 1 { 1.0 / g as f64 } else { 1.0 };
            ratio.powi(g as i32 - 1)
                * w
                * binomial(k as i64 - 1, g as i64 - 1)
                * binomial((n - k) as i64 - 1, g as i64 - 1)
        })
        .collect::<Neumaier>()
        .value();
    let divisor = if i == 1 { k as f64 } else { 1.0 };
    let rhs = abs_a_sq.powi(-(k as i32 - 1)) * rho / divisor;
    Ok((lhs, rhs))
}

/// [`combinatorial_jacobi_identity_at`] for the coin's `|a|²`.
pub fn combinatorial_jacobi_identity(coin: &Coin, n: usize, k: usize, i: u8) -> Result<(f64, f64)> {
    combinatorial_jacobi_identity_at(coin.abs_a_sq(), n, k, i)
}

//! The path sum `Ξ(l, m)`: the sum of all ordered products of `l` copies of
//! `P` and `m` copies of `Q`.
//!
//! For `n = l + m` and position `k = m - l`, `Ξ(l, m) φ` is the amplitude
//! vector at `k` after `n` steps. Three evaluations are provided:
//!
//! - [`enumerate_xi`] multiplies out every word (oracle, small `n` only),
//! - [`pqrs_coefficients`] evaluates the per-letter binomial sums,
//! - [`closed_form_xi`] evaluates the single alternating sum over `γ`.

use crate::coin::{Coin, Mat2, PqrsMatrix};
use crate::error::{Result, WalkError};
use crate::numeric::{binomial, Neumaier};
use crate::C64;

/// Largest `l + m` accepted by [`enumerate_xi`]; `C(14, 7) = 3432` words.
pub const ENUMERATION_CAP: usize = 14;

/// `l` left steps and `m` right steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StepCount {
    pub l: usize,
    pub m: usize,
}

impl StepCount {
    pub fn new(l: usize, m: usize) -> Self {
        StepCount { l, m }
    }

    /// The step counts that reach position `k` at time `n`.
    pub fn from_position(n: usize, k: i64) -> Result<Self> {
        let n_i = n as i64;
        if k.abs() > n_i || (n_i + k) % 2 != 0 {
            return Err(WalkError::ParityViolation { n, k });
        }
        Ok(StepCount {
            l: ((n_i - k) / 2) as usize,
            m: ((n_i + k) / 2) as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.l + self.m
    }

    pub fn k(&self) -> i64 {
        self.m as i64 - self.l as i64
    }

    fn require_steps(&self) -> Result<()> {
        if self.n() == 0 {
            Err(WalkError::InvalidArgument("l + m must be at least 1".into()))
        } else {
            Ok(())
        }
    }
}

/// Sums all `C(l + m, l)` words in `P` and `Q` by direct multiplication.
///
/// Bit `i` of a word mask selects `Q` (set) or `P` (clear) for the factor at
/// position `i`, counted from the left. Words are visited in increasing mask
/// order, so the reduction order is fixed.
pub fn enumerate_xi(coin: &Coin, sc: StepCount) -> Result<Mat2> {
    let n = sc.n();
    if n > ENUMERATION_CAP {
        return Err(WalkError::CapExceeded {
            what: "l + m",
            value: n,
            cap: ENUMERATION_CAP,
        });
    }
    let p = coin.letter(crate::coin::Letter::P);
    let q = coin.letter(crate::coin::Letter::Q);
    let total = (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == sc.m)
        .map(|mask| (0..n).fold(Mat2::identity(), |acc, i| acc * if mask >> i & 1 == 1 { q } else { p }))
        .sum();
    Ok(total)
}

/// `|W_{γ,l,m}| = C(l - 1, γ) C(m - 1, γ - 1)`: the number of words
/// `P^{w1} Q^{w2} ... Q^{w_2γ} P^{w_2γ+1}` with all `w_i >= 1`, `l` letters
/// `P` and `m` letters `Q`.
pub fn cluster_count(gamma: usize, l: usize, m: usize) -> u128 {
    if gamma == 0 {
        return 0;
    }
    let (g, l, m) = (gamma as i64, l as i64, m as i64);
    (binomial(l - 1, g) * binomial(m - 1, g - 1)) as u128
}

/// Coordinates of `Ξ(l, m)` in the `P, Q, R, S` basis, from the explicit
/// binomial sums for each coefficient.
///
/// Degenerate coins are accepted only when `l = 0` or `m = 0`.
pub fn pqrs_coefficients(coin: &Coin, sc: StepCount) -> Result<PqrsMatrix> {
    sc.require_steps()?;
    let StepCount { l, m } = sc;
    if l.min(m) >= 1 {
        coin.require_generic("pqrs_coefficients")?;
    }
    let (a, b, c, d) = (coin.a(), coin.b(), coin.c(), coin.d());
    let pw = |z: C64, e: usize| z.powu(e as u32);
    let bin = |n: usize, k: usize| binomial(n as i64, k as i64);
    let zero = C64::new(0.0, 0.0);

    let p = if m == 0 {
        pw(a, l - 1)
    } else if l >= 2 {
        (1..=(l - 1).min(m))
            .map(|g| pw(a, l - g - 1) * pw(b, g) * pw(c, g) * pw(d, m - g) * bin(l - 1, g) * bin(m - 1, g - 1))
            .sum()
    } else {
        zero
    };
    let q = if l == 0 {
        pw(d, m - 1)
    } else if m >= 2 {
        (1..=l.min(m - 1))
            .map(|g| pw(a, l - g) * pw(b, g) * pw(c, g) * pw(d, m - g - 1) * bin(l - 1, g - 1) * bin(m - 1, g))
            .sum()
    } else {
        zero
    };
    let (r, s) = if l.min(m) >= 1 {
        (1..=l.min(m)).fold((zero, zero), |(r, s), g| {
            let w = bin(l - 1, g - 1) * bin(m - 1, g - 1);
            let common = pw(a, l - g) * pw(d, m - g) * w;
            (
                r + common * pw(b, g) * pw(c, g - 1),
                s + common * pw(b, g - 1) * pw(c, g),
            )
        })
    } else {
        (zero, zero)
    };
    Ok(PqrsMatrix::new(*coin, p, q, r, s))
}

/// `Ξ(l, m)` from the closed forms:
///
/// - `l, m >= 1` (needs `abcd != 0`):
///   `a^l conj(a)^m Δ^m Σ_γ (-|b|²/|a|²)^γ C(l-1, γ-1) C(m-1, γ-1)
///   [ (l-γ)/(aγ) P + (m-γ)/(Δ conj(a) γ) Q - R/(Δ conj(b)) + S/b ]`,
/// - `m = 0`: `a^{l-1} P`,
/// - `l = 0`: `Δ^{m-1} conj(a)^{m-1} Q`.
pub fn closed_form_xi(coin: &Coin, sc: StepCount) -> Result<Mat2> {
    sc.require_steps()?;
    let StepCount { l, m } = sc;
    let (a, b, delta) = (coin.a(), coin.b(), coin.delta());
    let zero = C64::new(0.0, 0.0);
    let coords = if m == 0 {
        PqrsMatrix::new(*coin, a.powu(l as u32 - 1), zero, zero, zero)
    } else if l == 0 {
        let q = (delta * a.conj()).powu(m as u32 - 1);
        PqrsMatrix::new(*coin, zero, q, zero, zero)
    } else {
        coin.require_generic("closed_form_xi")?;
        let ratio = -coin.abs_b_sq() / coin.abs_a_sq();
        let (mut sum_p, mut sum_q, mut sum_rs) = (Neumaier::default(), Neumaier::default(), Neumaier::default());
        for g in 1..=l.min(m) {
            let w = ratio.powi(g as i32) * binomial(l as i64 - 1, g as i64 - 1) * binomial(m as i64 - 1, g as i64 - 1);
            let gf = g as f64;
            sum_p.add(w * (l as f64 - gf) / gf);
            sum_q.add(w * (m as f64 - gf) / gf);
            sum_rs.add(w);
        }
        let pref = a.powu(l as u32) * (a.conj() * delta).powu(m as u32);
        PqrsMatrix::new(
            *coin,
            pref * sum_p.value() / a,
            pref * sum_q.value() / (delta * a.conj()),
            -pref * sum_rs.value() / (delta * b.conj()),
            pref * sum_rs.value() / b,
        )
    };
    Ok(coords.materialize())
}

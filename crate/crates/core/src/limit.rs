//! The scaling limit of `X_n / n` and diagnostics for the approach to it.
//!
//! For a generic coin `X_n / n` converges in law to a variable with density
//!
//! ```text
//! f(x) = √(1 - |a|²) (1 - λx) / (π (1 - x²) √(|a|² - x²)),   |x| < |a|,
//! λ    = |α|² - |β|² + (aα conj(bβ) + conj(aα) bβ) / |a|²,
//! ```
//!
//! and for `|a| = 1` to the two-point law on `±1`.

use rayon::prelude::*;

use crate::analytic::WalkParams;
use crate::coin::{Coin, Qubit};
use crate::error::{Result, WalkError};
use crate::quad::GaussLegendre;
use crate::special::{gamma, gauss_2f1, rho, HypergeomArgs};
use crate::walk::{self, Distribution};

/// Largest `n` accepted by [`ks_convergence`].
pub const KS_N_CAP: usize = 2000;

/// Points of the uniform grid on `[-1, 1]` added to the CDF jump points.
pub const KS_GRID_POINTS: usize = 1000;

const CDF_TOL: f64 = 1e-12;
const RULE_ORDER: usize = 20;

/// The limit density for a generic coin and initial state.
#[derive(Clone, Debug)]
pub struct LimitDensity {
    coin: Coin,
    qubit: Qubit,
    abs_a: f64,
    lambda: f64,
    // √(1 - |a|²)
    root: f64,
    rule: GaussLegendre,
}

impl LimitDensity {
    pub fn new(coin: Coin, qubit: Qubit) -> Result<Self> {
        coin.require_generic("the limit density")?;
        let params = WalkParams::new(coin, qubit);
        let abs_a_sq = coin.abs_a_sq();
        let abs_a = abs_a_sq.sqrt();
        let lambda = params.diff() + params.cross() / abs_a_sq;
        assert!(
            1.0 - lambda.abs() * abs_a >= -1e-9,
            "density would go negative: lambda = {lambda}, |a| = {abs_a}"
        );
        Ok(LimitDensity {
            coin,
            qubit,
            abs_a,
            lambda,
            root: (1.0 - abs_a_sq).sqrt(),
            rule: GaussLegendre::new(RULE_ORDER),
        })
    }

    pub fn coin(&self) -> &Coin {
        &self.coin
    }

    pub fn qubit(&self) -> &Qubit {
        &self.qubit
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The support is the open interval `(-|a|, |a|)`.
    pub fn support(&self) -> (f64, f64) {
        (-self.abs_a, self.abs_a)
    }

    pub fn density(&self, x: f64) -> f64 {
        let a = self.abs_a;
        if x.is_nan() || x.abs() >= a {
            return 0.0;
        }
        self.root * (1.0 - self.lambda * x) / (std::f64::consts::PI * (1.0 - x * x) * (a * a - x * x).sqrt())
    }

    /// `f(|a| sin t) |a| cos t`, bounded on `[-π/2, π/2]`.
    fn angular(&self, t: f64) -> f64 {
        let x = self.abs_a * t.sin();
        self.root * (1.0 - self.lambda * x) / (std::f64::consts::PI * (1.0 - x * x))
    }

    fn angle_of(&self, x: f64) -> f64 {
        (x / self.abs_a).clamp(-1.0, 1.0).asin()
    }

    /// `P(Z <= x)`, integrated in the angle `x = |a| sin t`.
    pub fn limit_cdf(&self, x: f64) -> f64 {
        if x <= -self.abs_a {
            return 0.0;
        }
        if x >= self.abs_a {
            return 1.0;
        }
        let f = |t: f64| self.angular(t);
        self.rule
            .adaptive(&f, -std::f64::consts::FRAC_PI_2, self.angle_of(x), CDF_TOL)
    }

    /// `E(Z^m)`: closed forms for `m <= 2`, quadrature above.
    pub fn limit_moment(&self, m: u32) -> f64 {
        match m {
            0 => 1.0,
            1 => -(1.0 - self.root) * self.lambda,
            2 => 1.0 - self.root,
            _ => {
                let f = |t: f64| (self.abs_a * t.sin()).powi(m as i32) * self.angular(t);
                let h = std::f64::consts::FRAC_PI_2;
                self.rule.adaptive(&f, -h, h, CDF_TOL)
            }
        }
    }

    /// `∫ f` by quadrature.
    pub fn total_mass(&self) -> f64 {
        let f = |t: f64| self.angular(t);
        let h = std::f64::consts::FRAC_PI_2;
        self.rule.adaptive(&f, -h, h, CDF_TOL)
    }

    /// `∫ f = √(1 - |a|²)/π · Γ(1/2)² · ₂F₁(1/2, 1; 1; |a|²)`.
    pub fn total_mass_hypergeometric(&self) -> Result<f64> {
        let series = gauss_2f1(&HypergeomArgs::new(0.5, 1.0, 1.0, self.abs_a * self.abs_a))?;
        Ok(self.root / std::f64::consts::PI * gamma(0.5).powi(2) * series)
    }

    /// `sup_x |F_n(x) - F_Z(x)|` for the law of `X_n / n`.
    pub fn ks_distance(&self, dist: &Distribution) -> f64 {
        let n = dist.n().max(1) as f64;
        let mut worst: f64 = 0.0;
        let mut below = 0.0;
        // (x, F_n(x)) at every jump point, approached from both sides.
        let mut steps = Vec::with_capacity(dist.n() + 1);
        for (k, p) in dist.iter() {
            let x = k as f64 / n;
            let fz = self.limit_cdf(x);
            let above = below + p;
            worst = worst.max((below - fz).abs()).max((above - fz).abs());
            steps.push((x, above));
            below = above;
        }
        for j in 0..KS_GRID_POINTS {
            let x = -1.0 + 2.0 * j as f64 / (KS_GRID_POINTS - 1) as f64;
            let idx = steps.partition_point(|&(xj, _)| xj <= x);
            let fn_x = if idx == 0 { 0.0 } else { steps[idx - 1].1 };
            worst = worst.max((fn_x - self.limit_cdf(x)).abs());
        }
        worst.min(1.0)
    }
}

/// Limit law of `X_n / n` when `|a| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPointLimit {
    /// Mass at `-1`.
    pub p_minus: f64,
    /// Mass at `+1`.
    pub p_plus: f64,
}

impl TwoPointLimit {
    pub fn moment(&self, m: u32) -> f64 {
        if m.is_multiple_of(2) {
            self.p_minus + self.p_plus
        } else {
            self.p_plus - self.p_minus
        }
    }
}

pub fn two_point_limit(qubit: &Qubit) -> TwoPointLimit {
    TwoPointLimit {
        p_minus: qubit.alpha().norm_sqr(),
        p_plus: qubit.beta().norm_sqr(),
    }
}

/// KS distances between `X_n / n` and the limit, one entry per `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub entries: Vec<(usize, f64)>,
}

impl ConvergenceReport {
    pub fn distances(&self) -> Vec<f64> {
        self.entries.iter().map(|&(_, d)| d).collect()
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].1 <= w[0].1)
    }

    /// Entries with `n` of the given parity.
    pub fn parity_class(&self, odd: bool) -> ConvergenceReport {
        ConvergenceReport {
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|&(n, _)| (n % 2 == 1) == odd)
                .collect(),
        }
    }
}

fn check_n_list(n_list: &[usize], cap: usize) -> Result<()> {
    for &n in n_list {
        if n == 0 {
            return Err(WalkError::InvalidArgument("X_n / n needs n >= 1".into()));
        }
        if n > cap {
            return Err(WalkError::CapExceeded {
                what: "KS walk length",
                value: n,
                cap,
            });
        }
    }
    Ok(())
}

/// Exact-lattice KS distance for each `n` in `n_list`, evaluated in parallel.
pub fn ks_convergence(coin: &Coin, qubit: &Qubit, n_list: &[usize]) -> Result<ConvergenceReport> {
    check_n_list(n_list, KS_N_CAP)?;
    let ld = LimitDensity::new(*coin, *qubit)?;
    let entries = n_list
        .par_iter()
        .map(|&n| (n, ld.ks_distance(&walk::distribution(coin, qubit, n))))
        .collect();
    Ok(ConvergenceReport { entries })
}

/// For each `n`, the mean of the KS distances at `n` and `n + 1`.
///
/// Consecutive times live on disjoint lattices, so the raw sequence
/// alternates between parity classes.
pub fn ks_convergence_smoothed(coin: &Coin, qubit: &Qubit, n_list: &[usize]) -> Result<ConvergenceReport> {
    check_n_list(n_list, KS_N_CAP - 1)?;
    let both: Vec<usize> = n_list.iter().flat_map(|&n| [n, n + 1]).collect();
    let raw = ks_convergence(coin, qubit, &both)?;
    let entries = raw
        .entries
        .chunks(2)
        .map(|pair| (pair[0].0, 0.5 * (pair[0].1 + pair[1].1)))
        .collect();
    Ok(ConvergenceReport { entries })
}

/// `Λ = (1 - |a|²)((2x - 1)² - |a|²)` and the phase `θ ∈ [0, π/2]` with
/// `cos θ = √((1 - |a|²) / (4x(1 - x)))`, at a point `x` of the oscillatory
/// window `((1 - |a|)/2, (1 + |a|)/2)` where `Λ < 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticsNote {
    pub x: f64,
    pub abs_a: f64,
    pub lambda_cap: f64,
    pub theta: f64,
}

impl AsymptoticsNote {
    pub fn new(coin: &Coin, x: f64) -> Result<Self> {
        coin.require_generic("Jacobi asymptotics")?;
        let abs_a_sq = coin.abs_a_sq();
        let abs_a = abs_a_sq.sqrt();
        let (lo, hi) = ((1.0 - abs_a) / 2.0, (1.0 + abs_a) / 2.0);
        if !(x > lo && x < hi) {
            return Err(WalkError::OutOfWindow { x, lo, hi });
        }
        let lambda_cap = (1.0 - abs_a_sq) * ((2.0 * x - 1.0).powi(2) - abs_a_sq);
        let cos_theta = ((1.0 - abs_a_sq) / (4.0 * x * (1.0 - x))).sqrt().min(1.0);
        Ok(AsymptoticsNote {
            x,
            abs_a,
            lambda_cap,
            theta: cos_theta.acos(),
        })
    }

    /// Amplitude of the oscillation of `|ρ_{n,k,i}| |a|^{n-2k} √n` at this `x`.
    pub fn amplitude(&self, i: u8) -> f64 {
        let base = 2.0 / (std::f64::consts::PI * (-self.lambda_cap).sqrt()).sqrt();
        if i == 0 {
            base
        } else {
            base * (self.x / ((1.0 - self.x) * (1.0 - self.abs_a * self.abs_a))).sqrt()
        }
    }
}

/// `|ρ_{n,k,i}| |a|^{n-2k} √n`, bounded in `n` at fixed `x = k/n` inside the
/// oscillatory window. Requires `1 <= k <= n/2`.
pub fn asymptotics_envelope(coin: &Coin, n: usize, k: usize, i: u8) -> Result<f64> {
    AsymptoticsNote::new(coin, k as f64 / n as f64)?;
    let abs_a_sq = coin.abs_a_sq();
    let value = rho(abs_a_sq, n, k, i)?.value;
    Ok(value.abs() * abs_a_sq.powf((n as f64 - 2.0 * k as f64) / 2.0) * (n as f64).sqrt())
}

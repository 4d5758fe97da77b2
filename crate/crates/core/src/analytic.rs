//! Closed-form position probabilities, characteristic functions and moments.
//!
//! For a generic coin every interior quantity at position `±(n - 2k)` is a
//! linear combination of three double sums over `1 <= γ, δ <= k`:
//!
//! ```text
//! S     = |a|^{2(n-1)} Σ (-|b|²/|a|²)^{γ+δ} κ / (γδ)
//! S_+   = |a|^{2(n-1)} Σ (-|b|²/|a|²)^{γ+δ} κ (γ + δ) / (γδ)
//! S_×   = |a|^{2(n-1)} Σ (-|b|²/|a|²)^{γ+δ} κ
//! ```
//!
//! with `κ = C(k-1, γ-1) C(k-1, δ-1) C(n-k-1, γ-1) C(n-k-1, δ-1)`.
//! [`DoubleSums::literal`] evaluates them term by term and is the reference
//! for small `n`. The summand factors in `γ` and `δ`, so
//! [`DoubleSums::factorized`] rebuilds them from two Jacobi values; that route
//! stays accurate for `n` in the hundreds where the literal sums cancel.

use crate::coin::{Coin, CoinBranch, Qubit};
use crate::error::{Result, WalkError};
use crate::numeric::{binomial, Neumaier};
use crate::paths::StepCount;
use crate::special::rho;
use crate::C64;

/// Coin and initial state together with the derived scalars that recur in
/// the closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkParams {
    coin: Coin,
    qubit: Qubit,
    mu: f64,
    cross: f64,
    diff: f64,
}

impl WalkParams {
    pub fn new(coin: Coin, qubit: Qubit) -> Self {
        let z = coin.a() * qubit.alpha() * (coin.b() * qubit.beta()).conj();
        let cross = 2.0 * z.re;
        let diff = qubit.alpha().norm_sqr() - qubit.beta().norm_sqr();
        let mu = (coin.abs_a_sq() - coin.abs_b_sq()) * diff + 2.0 * cross;
        WalkParams {
            coin,
            qubit,
            mu,
            cross,
            diff,
        }
    }

    pub fn coin(&self) -> &Coin {
        &self.coin
    }

    pub fn qubit(&self) -> &Qubit {
        &self.qubit
    }

    /// `μ = (|a|² - |b|²)(|α|² - |β|²) + 2 cross`, the negated first-step mean.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `aα conj(bβ) + conj(aα) bβ`.
    pub fn cross(&self) -> f64 {
        self.cross
    }

    /// `|α|² - |β|²`.
    pub fn diff(&self) -> f64 {
        self.diff
    }
}

/// `κ_{γ,δ,n,k}` and `ν_{γ,δ,n,k} = (n-k)² + k² - n(γ+δ) + 2γδ/|b|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaNu {
    pub kappa: f64,
    pub nu: f64,
}

impl KappaNu {
    pub fn new(n: usize, k: usize, gamma: usize, delta: usize, abs_b_sq: f64) -> Self {
        let (n, k, g, d) = (n as i64, k as i64, gamma as i64, delta as i64);
        let kappa =
            binomial(k - 1, g - 1) * binomial(k - 1, d - 1) * binomial(n - k - 1, g - 1) * binomial(n - k - 1, d - 1);
        let (nf, kf) = (n as f64, k as f64);
        let nu = (nf - kf).powi(2) + kf * kf - nf * (g + d) as f64 + 2.0 * (g * d) as f64 / abs_b_sq;
        KappaNu { kappa, nu }
    }
}

/// The three `(γ, δ)` double sums at `(n, k)`, prefactor `|a|^{2(n-1)}` included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleSums {
    n: usize,
    k: usize,
    abs_b_sq: f64,
    /// `S`, weight `1/(γδ)`.
    pub plain: f64,
    /// `S_+`, weight `(γ+δ)/(γδ)`.
    pub sum_weighted: f64,
    /// `S_×`, weight `1`.
    pub product_weighted: f64,
}

impl DoubleSums {
    /// Term-by-term evaluation with compensated accumulation.
    pub fn literal(coin: &Coin, n: usize, k: usize) -> Self {
        let (abs_a_sq, abs_b_sq) = (coin.abs_a_sq(), coin.abs_b_sq());
        let (mut plain, mut sum_w, mut prod_w) = (Neumaier::default(), Neumaier::default(), Neumaier::default());
        for g in 1..=k {
            for d in 1..=k {
                let s = (g + d) as i32;
                // |a|^{2(n-1)} (-|b|²/|a|²)^s without forming the ratio.
                let scale = abs_b_sq.powi(s) * abs_a_sq.powi(n as i32 - 1 - s);
                let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
                let kappa = KappaNu::new(n, k, g, d, abs_b_sq).kappa;
                let w = sign * scale * kappa / (g * d) as f64;
                plain.add(w);
                sum_w.add(w * s as f64);
                prod_w.add(w * (g * d) as f64);
            }
        }
        DoubleSums {
            n,
            k,
            abs_b_sq,
            plain: plain.value(),
            sum_weighted: sum_w.value(),
            product_weighted: prod_w.value(),
        }
    }

    /// Rebuilds the sums from `ρ_{n,k,0}` and `ρ_{n,k,1}`.
    ///
    /// With `T_i = Σ_γ (-|b|²/|a|²)^γ C(k-1,γ-1) C(n-k-1,γ-1) / γ^i`:
    /// `S = T_1²`, `S_+ = 2 T_0 T_1`, `S_× = T_0²` (times `|a|^{2(n-1)}`), and
    /// `T_0 = -(|b|²/|a|²) |a|^{-2(k-1)} ρ_{n,k,0}`, `T_1 = T_0|_{ρ_1} / k`.
    pub fn factorized(coin: &Coin, n: usize, k: usize) -> Result<Self> {
        let (abs_a_sq, abs_b_sq) = (coin.abs_a_sq(), coin.abs_b_sq());
        let rho0 = rho(abs_a_sq, n, k, 0)?.value;
        let rho1 = rho(abs_a_sq, n, k, 1)?.value / k as f64;
        // |a|^{2(n-1)} (|b|²/|a|²)² |a|^{-4(k-1)}
        let scale = abs_b_sq * abs_b_sq * abs_a_sq.powi(n as i32 - 2 * k as i32 - 1);
        Ok(DoubleSums {
            n,
            k,
            abs_b_sq,
            plain: scale * rho1 * rho1,
            sum_weighted: 2.0 * scale * rho0 * rho1,
            product_weighted: scale * rho0 * rho0,
        })
    }

    /// `|a|^{2(n-1)} Σ (-|b|²/|a|²)^{γ+δ} κ ν / (γδ)`.
    pub fn nu_weighted(&self) -> f64 {
        let (n, k) = (self.n as f64, self.k as f64);
        (k * k + (n - k).powi(2)) * self.plain - n * self.sum_weighted + 2.0 * self.product_weighted / self.abs_b_sq
    }

    /// `P(X_n = n - 2k)`.
    pub fn prob_plus(&self, params: &WalkParams) -> f64 {
        self.prob_signed(params, 1.0)
    }

    /// `P(X_n = -(n - 2k))`.
    pub fn prob_minus(&self, params: &WalkParams) -> f64 {
        self.prob_signed(params, -1.0)
    }

    fn prob_signed(&self, params: &WalkParams, sign: f64) -> f64 {
        let (n, k) = (self.n as f64, self.k as f64);
        let (aa, bb) = (params.coin.abs_a_sq(), self.abs_b_sq);
        let (al, be) = (params.qubit.alpha().norm_sqr(), params.qubit.beta().norm_sqr());
        // The mirrored position swaps the roles of k and n - k.
        let (near, far) = if sign > 0.0 { (k, n - k) } else { (n - k, k) };
        let constant = (near * near * aa + far * far * bb) * al + (near * near * bb + far * far * aa) * be;
        let linear = far * al + near * be;
        // The coefficients of aα conj(bβ) and its conjugate swap under γ ↔ δ,
        // so only their symmetric part survives the sum.
        let cross_coef = sign * ((n - 2.0 * k) * self.sum_weighted / 2.0 + n * (2.0 * k - n) * bb * self.plain);
        constant * self.plain - linear * self.sum_weighted + (params.cross * cross_coef + self.product_weighted) / bb
    }

    /// `(n - 2k){μ n S + (|α|² - |β|² - μ) S_+ / (2|b|²)}`, the odd part at `±(n - 2k)`.
    fn odd_part(&self, params: &WalkParams) -> f64 {
        let n = self.n as f64;
        let shift = n - 2.0 * self.k as f64;
        shift * (params.mu * n * self.plain + (params.diff - params.mu) * self.sum_weighted / (2.0 * self.abs_b_sq))
    }
}

/// Which double-sum evaluator the generic closed forms use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumRoute {
    Literal,
    Factorized,
}

/// Largest `n` for which [`SumRoute::for_n`] picks the literal sums.
pub const LITERAL_N_MAX: usize = 24;

impl SumRoute {
    /// Literal sums up to [`LITERAL_N_MAX`], Jacobi values beyond.
    pub fn for_n(n: usize) -> Self {
        if n <= LITERAL_N_MAX {
            SumRoute::Literal
        } else {
            SumRoute::Factorized
        }
    }

    fn sums(self, coin: &Coin, n: usize, k: usize) -> Result<DoubleSums> {
        match self {
            SumRoute::Literal => Ok(DoubleSums::literal(coin, n, k)),
            SumRoute::Factorized => DoubleSums::factorized(coin, n, k),
        }
    }
}

fn require_n(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(WalkError::InvalidArgument(format!("{what} needs n >= 1")));
    }
    Ok(())
}

/// `P(X_n = k)` from the closed form for a generic coin.
///
/// Position 0 (even `n`) is evaluated through both mirrored interior forms,
/// which must agree.
pub fn prob_closed_form(params: &WalkParams, n: usize, k: i64) -> Result<f64> {
    prob_with(params, n, k, SumRoute::Literal)
}

/// [`prob_closed_form`] with an explicit choice of double-sum evaluator.
pub fn prob_with(params: &WalkParams, n: usize, k: i64, route: SumRoute) -> Result<f64> {
    params.coin.require_generic("closed-form probabilities")?;
    require_n(n, "closed-form probabilities")?;
    StepCount::from_position(n, k)?;
    let (aa, bb) = (params.coin.abs_a_sq(), params.coin.abs_b_sq());
    let (al, be) = (params.qubit.alpha().norm_sqr(), params.qubit.beta().norm_sqr());
    let edge = aa.powi(n as i32 - 1);
    if k == n as i64 {
        return Ok(edge * (bb * al + aa * be - params.cross));
    }
    if k == -(n as i64) {
        return Ok(edge * (aa * al + bb * be + params.cross));
    }
    let inner = (n - k.unsigned_abs() as usize) / 2;
    let sums = route.sums(&params.coin, n, inner)?;
    Ok(match k.signum() {
        1 => sums.prob_plus(params),
        -1 => sums.prob_minus(params),
        _ => {
            let (plus, minus) = (sums.prob_plus(params), sums.prob_minus(params));
            assert!(
                (plus - minus).abs() <= 1e-12 * plus.abs().max(1.0),
                "mirrored forms disagree at position 0: {plus} vs {minus}"
            );
            plus
        }
    })
}

/// `E(e^{iξ X_n})`, dispatching on the coin branch.
pub fn char_fn(params: &WalkParams, n: usize, xi: f64) -> C64 {
    char_fn_with(params, n, xi, SumRoute::Literal).expect("literal sums cannot fail")
}

/// [`char_fn`] with an explicit choice of double-sum evaluator.
pub fn char_fn_with(params: &WalkParams, n: usize, xi: f64, route: SumRoute) -> Result<C64> {
    let nf = n as f64;
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(match params.coin.branch() {
        CoinBranch::NoTurn => C64::new((nf * xi).cos(), -params.diff * (nf * xi).sin()),
        CoinBranch::AlwaysTurn => {
            if n % 2 == 1 {
                C64::new(xi.cos(), params.diff * xi.sin())
            } else {
                C64::new(1.0, 0.0)
            }
        }
        CoinBranch::Generic => char_fn_generic(params, n, xi, route)?,
    })
}

fn char_fn_generic(params: &WalkParams, n: usize, xi: f64, route: SumRoute) -> Result<C64> {
    let edge = params.coin.abs_a_sq().powi(n as i32 - 1);
    let nf = n as f64;
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    re.add(edge * (nf * xi).cos());
    im.add(-edge * params.mu * (nf * xi).sin());
    for k in 1..=(n.saturating_sub(1)) / 2 {
        let sums = route.sums(&params.coin, n, k)?;
        let phase = (nf - 2.0 * k as f64) * xi;
        re.add(sums.nu_weighted() * phase.cos());
        im.add(-sums.odd_part(params) * phase.sin());
    }
    re.add(char_fn_middle_term(params, n, route)?);
    Ok(C64::new(re.value(), im.value()))
}

/// The even-`n` block of the generic characteristic function, which is
/// `P(X_n = 0)`; zero for odd `n`.
fn char_fn_middle_term(params: &WalkParams, n: usize, route: SumRoute) -> Result<f64> {
    if n % 2 == 1 || n == 0 {
        return Ok(0.0);
    }
    Ok(route.sums(&params.coin, n, n / 2)?.nu_weighted() / 2.0)
}

/// `E(X_n^m)` from the closed forms.
pub fn moment(params: &WalkParams, n: usize, m: u32) -> f64 {
    moment_with(params, n, m, SumRoute::Literal).expect("literal sums cannot fail")
}

/// `E(X_n^m)` with the double sums rebuilt from Jacobi values, for large `n`.
///
/// Agrees with [`moment`] for small `n` and remains accurate where the
/// literal alternating sums lose all significance.
pub fn moment_jacobi(params: &WalkParams, n: usize, m: u32) -> Result<f64> {
    moment_with(params, n, m, SumRoute::Factorized)
}

/// [`moment`] with an explicit choice of double-sum evaluator.
pub fn moment_with(params: &WalkParams, n: usize, m: u32, route: SumRoute) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    let nf = n as f64;
    let nm = nf.powi(m as i32);
    let odd = m % 2 == 1;
    Ok(match params.coin.branch() {
        CoinBranch::NoTurn => {
            if odd {
                -nm * params.diff
            } else {
                nm
            }
        }
        CoinBranch::AlwaysTurn => match (n % 2 == 1, odd) {
            (false, _) => 0.0,
            (true, true) => params.diff,
            (true, false) => 1.0,
        },
        CoinBranch::Generic if n == 0 => 0.0,
        CoinBranch::Generic => {
            let edge = params.coin.abs_a_sq().powi(n as i32 - 1);
            let mut acc = Neumaier::default();
            if odd {
                acc.add(edge * params.mu * nm);
            } else {
                acc.add(edge * nm);
            }
            for k in 1..=(n - 1) / 2 {
                let sums = route.sums(&params.coin, n, k)?;
                let shift = (nf - 2.0 * k as f64).powi(m as i32);
                if odd {
                    acc.add(shift * sums.odd_part(params));
                } else {
                    acc.add(shift * sums.nu_weighted());
                }
            }
            if odd {
                -acc.value()
            } else {
                acc.value()
            }
        }
    })
}

/// The mean once `μ = 0`:
/// `E(X_n) = -(|α|² - |β|²)/(2|b|²) Σ_k (n - 2k)² S_+(n, k)`.
pub fn mean_symmetric_reduction(params: &WalkParams, n: usize) -> Result<f64> {
    params.coin.require_generic("the reduced mean")?;
    if params.mu.abs() > 1e-12 {
        return Err(WalkError::PreconditionFailed(format!(
            "reduced mean needs mu = 0, got {}",
            params.mu
        )));
    }
    if n < 3 {
        return Err(WalkError::PreconditionFailed(format!(
            "reduced mean needs n >= 3, got {n}"
        )));
    }
    let nf = n as f64;
    let total = (1..=(n - 1) / 2)
        .map(|k| Ok((nf - 2.0 * k as f64).powi(2) * SumRoute::for_n(n).sums(&params.coin, n, k)?.sum_weighted))
        .collect::<Result<Neumaier>>()?
        .value();
    Ok(-params.diff / (2.0 * params.coin.abs_b_sq()) * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{validate_coin, Mat2};
    use crate::test_util::{random_coin, random_qubit};
    use crate::walk::distribution;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn hadamard_symmetric() -> WalkParams {
        WalkParams::new(Coin::hadamard(), Qubit::symmetric())
    }

    fn no_turn_coin() -> Coin {
        validate_coin(Mat2::from_re_im([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]), 1e-12).unwrap()
    }

    fn always_turn_coin() -> Coin {
        validate_coin(Mat2::from_re_im([0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]), 1e-12).unwrap()
    }

    #[test]
    fn hadamard_n4_table() {
        let p = hadamard_symmetric();
        for (k, want) in [
            (-4, 1.0 / 16.0),
            (-2, 6.0 / 16.0),
            (0, 2.0 / 16.0),
            (2, 6.0 / 16.0),
            (4, 1.0 / 16.0),
        ] {
            assert!((prob_closed_form(&p, 4, k).unwrap() - want).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn edge_probability_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let p = WalkParams::new(random_coin(&mut rng), random_qubit(&mut rng));
            let n = 7;
            let dist = distribution(p.coin(), p.qubit(), n);
            assert!((prob_closed_form(&p, n, 7).unwrap() - dist.prob(7)).abs() < 1e-13);
            assert!((prob_closed_form(&p, n, -7).unwrap() - dist.prob(-7)).abs() < 1e-13);
        }
    }

    #[test]
    fn matches_engine_n9() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let p = WalkParams::new(random_coin(&mut rng), random_qubit(&mut rng));
            let dist = distribution(p.coin(), p.qubit(), 9);
            for (k, want) in dist.iter() {
                assert!((prob_closed_form(&p, 9, k).unwrap() - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_errors() {
        let p = hadamard_symmetric();
        assert_eq!(
            prob_closed_form(&p, 4, 1),
            Err(WalkError::ParityViolation { n: 4, k: 1 })
        );
        assert!(matches!(
            prob_closed_form(&p, 4, 6),
            Err(WalkError::ParityViolation { .. })
        ));
        let degenerate = WalkParams::new(no_turn_coin(), Qubit::symmetric());
        assert!(matches!(
            prob_closed_form(&degenerate, 4, 0),
            Err(WalkError::DegenerateCoin(_))
        ));
    }

    #[test]
    fn char_fn_examples() {
        let p = hadamard_symmetric();
        for j in 0..20 {
            let xi = -PI + 0.33 * j as f64;
            let want = 0.125 + 0.75 * (2.0 * xi).cos() + 0.125 * (4.0 * xi).cos();
            assert!((char_fn(&p, 4, xi) - C64::new(want, 0.0)).norm() < 1e-12);
        }
        assert!((char_fn(&p, 7, 0.0) - C64::new(1.0, 0.0)).norm() < 1e-12);
        let b0 = WalkParams::new(no_turn_coin(), Qubit::left());
        for xi in [0.3f64, 1.1, -2.0] {
            let want = C64::new((3.0 * xi).cos(), -(3.0 * xi).sin());
            assert!((char_fn(&b0, 3, xi) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn middle_term_is_probability_at_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = WalkParams::new(random_coin(&mut rng), random_qubit(&mut rng));
            for n in [2, 4, 6, 10] {
                let middle = char_fn_middle_term(&p, n, SumRoute::Literal).unwrap();
                let dist = distribution(p.coin(), p.qubit(), n);
                assert!((middle - dist.prob(0)).abs() < 1e-12, "n={n}");
            }
            assert_eq!(char_fn_middle_term(&p, 5, SumRoute::Literal).unwrap(), 0.0);
        }
    }

    #[test]
    fn char_fn_matches_engine_and_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let p = WalkParams::new(random_coin(&mut rng), random_qubit(&mut rng));
            for n in 1..=12 {
                let dist = distribution(p.coin(), p.qubit(), n);
                for j in 0..20 {
                    let xi = -PI + 2.0 * PI * j as f64 / 19.0;
                    let cf = char_fn(&p, n, xi);
                    assert!((cf - dist.char_fn(xi)).norm() < 1e-9, "n={n} xi={xi}");
                    assert!((char_fn(&p, n, -xi) - cf.conj()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert!((moment(&hadamard_symmetric(), 4, 2) - 5.0).abs() < 1e-12);
        assert_eq!(moment(&hadamard_symmetric(), 4, 0), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let q = random_qubit(&mut rng);
            let b0 = WalkParams::new(no_turn_coin(), q);
            assert_eq!(moment(&b0, 6, 4), 6f64.powi(4));
            let a0 = WalkParams::new(always_turn_coin(), q);
            for m in 1..6 {
                assert_eq!(moment(&a0, 8, m), 0.0);
            }
        }
    }

    #[test]
    fn moments_match_engine() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let p = WalkParams::new(random_coin(&mut rng), random_qubit(&mut rng));
            for n in 1..=12 {
                let dist = distribution(p.coin(), p.qubit(), n);
                for m in 1..=4 {
                    assert!((moment(&p, n, m) - dist.moment(m)).abs() < 1e-8, "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn even_moments_ignore_the_initial_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let coin = random_coin(&mut rng);
        for m in [2, 4] {
            let values: Vec<f64> = (0..10)
                .map(|_| moment(&WalkParams::new(coin, random_qubit(&mut rng)), 9, m))
                .collect();
            let spread =
                values.iter().cloned().fold(f64::MIN, f64::max) - values.iter().cloned().fold(f64::MAX, f64::min);
            assert!(spread < 1e-9, "m={m}: {spread}");
        }
    }

    #[test]
    fn factorized_sums_agree_with_literal() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..5 {
            let coin = random_coin(&mut rng);
            for n in 2..=16 {
                for k in 1..=n / 2 {
                    let lit = DoubleSums::literal(&coin, n, k);
                    let fac = DoubleSums::factorized(&coin, n, k).unwrap();
                    for (x, y) in [
                        (lit.plain, fac.plain),
                        (lit.sum_weighted, fac.sum_weighted),
                        (lit.product_weighted, fac.product_weighted),
                    ] {
                        assert!((x - y).abs() < 1e-11 * x.abs().max(1.0), "n={n} k={k}: {x} vs {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_moments_track_the_engine_at_large_n() {
        let p = WalkParams::new(Coin::hadamard(), Qubit::right());
        let n = 300;
        let dist = distribution(p.coin(), p.qubit(), n);
        for m in 1..=2 {
            let got = moment_jacobi(&p, n, m).unwrap();
            let want = dist.moment(m);
            assert!(
                (got - want).abs() < 1e-9 * want.abs().max(1.0),
                "m={m}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn jacobi_route_probabilities_and_char_fn_at_n100() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = WalkParams::new(random_coin(&mut rng), random_qubit(&mut rng));
        let n = 100;
        assert_eq!(SumRoute::for_n(n), SumRoute::Factorized);
        let dist = distribution(p.coin(), p.qubit(), n);
        for (k, want) in dist.iter() {
            assert!(
                (prob_with(&p, n, k, SumRoute::for_n(n)).unwrap() - want).abs() < 1e-12,
                "k={k}"
            );
        }
        for xi in [-1.0, 0.2, 2.9] {
            let got = char_fn_with(&p, n, xi, SumRoute::Factorized).unwrap();
            assert!((got - dist.char_fn(xi)).norm() < 1e-11);
        }
        assert_eq!(char_fn(&p, 0, 1.3), C64::new(1.0, 0.0));
    }

    #[test]
    fn reduced_mean() {
        let h = FRAC_1_SQRT_2;
        let sym = hadamard_symmetric();
        assert!(mean_symmetric_reduction(&sym, 6).unwrap().abs() < 1e-15);
        let t = 0.3f64;
        let q = Qubit::new(C64::new(t.cos(), 0.0), C64::new(0.0, t.sin())).unwrap();
        let p = WalkParams::new(Coin::hadamard(), q);
        assert!(p.mu().abs() < 1e-15);
        let reduced = mean_symmetric_reduction(&p, 5).unwrap();
        assert!((reduced - moment(&p, 5, 1)).abs() < 1e-10);
        assert!(reduced.abs() > 1e-3);
        let swapped = Qubit::new(q.beta(), q.alpha()).unwrap();
        let flipped = mean_symmetric_reduction(&WalkParams::new(Coin::hadamard(), swapped), 5).unwrap();
        assert!((flipped + reduced).abs() < 1e-12);
        let off = WalkParams::new(
            Coin::hadamard(),
            Qubit::new(C64::new(h, 0.0), C64::new(h, 0.0)).unwrap(),
        );
        assert!(matches!(
            mean_symmetric_reduction(&off, 5),
            Err(WalkError::PreconditionFailed(_))
        ));
    }
}

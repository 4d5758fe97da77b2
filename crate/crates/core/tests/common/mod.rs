#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qwalk::coin::{validate_coin, Coin, Mat2, Qubit};
use qwalk::C64;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, TAU};

/// A coin with `abcd != 0` and `|a|` bounded away from 0 and 1.
pub fn random_coin<R: Rng>(rng: &mut R) -> Coin {
    let theta = rng.gen_range(0.15..FRAC_PI_2 - 0.15);
    Coin::from_angles(
        theta,
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
    )
}

pub fn random_qubit<R: Rng>(rng: &mut R) -> Qubit {
    let t = rng.gen_range(0.0..FRAC_PI_2);
    Qubit::new(
        C64::from_polar(t.cos(), rng.gen_range(0.0..TAU)),
        C64::from_polar(t.sin(), rng.gen_range(0.0..TAU)),
    )
    .unwrap()
}

/// `diag(e^{ip}, e^{iq})`.
pub fn no_turn_coin(p: f64, q: f64) -> Coin {
    let z = C64::new(0.0, 0.0);
    validate_coin(Mat2::new(C64::from_polar(1.0, p), z, z, C64::from_polar(1.0, q)), 1e-12).unwrap()
}

/// `[[0, e^{ip}], [e^{iq}, 0]]`.
pub fn always_turn_coin(p: f64, q: f64) -> Coin {
    let z = C64::new(0.0, 0.0);
    validate_coin(Mat2::new(z, C64::from_polar(1.0, p), C64::from_polar(1.0, q), z), 1e-12).unwrap()
}

/// Gaussian integer `re + i im`.
#[derive(Clone, Debug, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    fn new(re: i64, im: i64) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }
    fn add(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Exact law of the Hadamard walk from `(alpha, beta)` given as Gaussian
/// integers with `|alpha|² + |beta|² = norm`.
///
/// `√2^n` times the amplitude vector stays integral under `[[1, 1], [1, -1]]`,
/// so `P(X_n = k) = |v_k|² / (norm 2^n)` exactly. Returns `(k, P)` pairs.
pub fn hadamard_exact(alpha: (i64, i64), beta: (i64, i64), n: usize) -> Vec<(i64, BigRational)> {
    let width = 2 * n + 1;
    let mut field = vec![[GaussInt::default(), GaussInt::default()]; width];
    field[n] = [GaussInt::new(alpha.0, alpha.1), GaussInt::new(beta.0, beta.1)];
    for _ in 0..n {
        let mut next = vec![[GaussInt::default(), GaussInt::default()]; width];
        for j in 0..width {
            let [l, r] = &field[j];
            if l.re.is_zero() && l.im.is_zero() && r.re.is_zero() && r.im.is_zero() {
                continue;
            }
            // P = [[1, 1], [0, 0]] moves left, Q = [[0, 0], [1, -1]] moves right.
            next[j - 1][0] = next[j - 1][0].add(&l.add(r));
            next[j + 1][1] = next[j + 1][1].add(&l.sub(r));
        }
        field = next;
    }
    let norm = GaussInt::new(alpha.0, alpha.1).norm_sqr() + GaussInt::new(beta.0, beta.1).norm_sqr();
    let denom = norm * (BigInt::one() << n);
    field
        .iter()
        .enumerate()
        .filter(|(j, _)| j % 2 == 0)
        .map(|(j, [l, r])| {
            (
                j as i64 - n as i64,
                BigRational::new(l.norm_sqr() + r.norm_sqr(), denom.clone()),
            )
        })
        .collect()
}

pub fn exact_moment(law: &[(i64, BigRational)], m: u32) -> BigRational {
    law.iter().fold(BigRational::zero(), |acc, (k, p)| {
        acc + p * BigRational::from_integer(BigInt::from(*k).pow(m))
    })
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `P_m^{(α, β)}(x)` for integer `α, β >= 0` and rational `x`, from
/// `Σ_s C(m+α, m-s) C(m+β, s) ((x-1)/2)^s ((x+1)/2)^{m-s}`.
pub fn jacobi_exact(m: u64, alpha: u64, beta: u64, x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let lo = (x - BigRational::one()) / &two;
    let hi = (x + BigRational::one()) / &two;
    let powers = |base: &BigRational| {
        let mut out = vec![BigRational::one()];
        for _ in 0..m {
            let next = out.last().unwrap() * base;
            out.push(next);
        }
        out
    };
    let (lo_pow, hi_pow) = (powers(&lo), powers(&hi));
    (0..=m).fold(BigRational::zero(), |acc, s| {
        let c = binom(m + alpha, m - s) * binom(m + beta, s);
        acc + BigRational::from_integer(c) * &lo_pow[s as usize] * &hi_pow[(m - s) as usize]
    })
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn abs_f64(q: &BigRational) -> f64 {
    to_f64(&q.abs())
}

//! Coin matrices, qubit states and the `P, Q, R, S` algebra.
//!
//! A coin `U = [[a, b], [c, d]]` splits as `U = P + Q` with
//!
//! ```text
//! P = [[a, b], [0, 0]]   (step left)     R = [[c, d], [0, 0]]
//! Q = [[0, 0], [c, d]]   (step right)    S = [[0, 0], [a, b]]
//! ```
//!
//! The four matrices are orthonormal under `<A|B> = tr(A* B)` and closed
//! under multiplication up to a scalar factor, see [`pqrs_product`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use crate::error::{Result, WalkError};
use crate::C64;

/// Default tolerance for algebraic identities.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A 2×2 complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Mat2([[C64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Mat2::new(o, z, z, o)
    }

    /// Builds a matrix from eight reals `re, im` per entry in row-major order.
    pub fn from_re_im(v: [f64; 8]) -> Self {
        Mat2::new(
            C64::new(v[0], v[1]),
            C64::new(v[2], v[3]),
            C64::new(v[4], v[5]),
            C64::new(v[6], v[7]),
        )
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Mat2::new(s * m[0][0], s * m[0][1], s * m[1][0], s * m[1][1])
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Trace inner product `tr(self* other)`.
    pub fn inner(&self, other: &Mat2) -> C64 {
        (self.adjoint() * *other).trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        Mat2::new(
            l[0][0] + r[0][0],
            l[0][1] + r[0][1],
            l[1][0] + r[1][0],
            l[1][1] + r[1][1],
        )
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, rhs: Mat2) {
        *self = *self + rhs;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        Mat2::new(
            l[0][0] * r[0][0] + l[0][1] * r[1][0],
            l[0][0] * r[0][1] + l[0][1] * r[1][1],
            l[1][0] * r[0][0] + l[1][1] * r[1][0],
            l[1][0] * r[0][1] + l[1][1] * r[1][1],
        )
    }
}

impl std::iter::Sum for Mat2 {
    fn sum<I: Iterator<Item = Mat2>>(iter: I) -> Mat2 {
        iter.fold(Mat2::zero(), |acc, m| acc + m)
    }
}

/// Which closed-form branch a coin falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoinBranch {
    /// `abcd != 0`.
    Generic,
    /// `b = 0` (hence `c = 0`): the chirality never flips.
    NoTurn,
    /// `a = 0` (hence `d = 0`): the chirality flips every step.
    AlwaysTurn,
}

impl fmt::Display for CoinBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoinBranch::Generic => "abcd!=0",
            CoinBranch::NoTurn => "b=0",
            CoinBranch::AlwaysTurn => "a=0",
        })
    }
}

/// A validated unitary coin `[[a, b], [c, d]]` with determinant `delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coin {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
    delta: C64,
    branch: CoinBranch,
}

/// Checks the unitarity relations of `matrix` and returns the coin.
///
/// Besides row/column orthonormality this checks `c = -Δ conj(b)`,
/// `d = Δ conj(a)` and `|Δ| = 1`. A coin is classified as [`CoinBranch::NoTurn`]
/// when `|b| <= tol` and [`CoinBranch::AlwaysTurn`] when `|a| <= tol`.
pub fn validate_coin(matrix: Mat2, tol: f64) -> Result<Coin> {
    if !matrix.is_finite() {
        return Err(WalkError::NonFinite);
    }
    let [[a, b], [c, d]] = matrix.0;
    let delta = matrix.determinant();
    let deviation = [
        (a.norm_sqr() + c.norm_sqr() - 1.0).abs(),
        (b.norm_sqr() + d.norm_sqr() - 1.0).abs(),
        (a * c.conj() + b * d.conj()).norm(),
        (c + delta * b.conj()).norm(),
        (d - delta * a.conj()).norm(),
        (delta.norm() - 1.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if deviation.is_nan() || deviation > tol {
        return Err(WalkError::NotUnitary { deviation, tol });
    }
    let branch = if b.norm() <= tol {
        CoinBranch::NoTurn
    } else if a.norm() <= tol {
        CoinBranch::AlwaysTurn
    } else {
        CoinBranch::Generic
    };
    Ok(Coin {
        a,
        b,
        c,
        d,
        delta,
        branch,
    })
}

impl Coin {
    /// The Hadamard coin `(1/√2) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Coin {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        validate_coin(Mat2::new(h, h, h, -h), DEFAULT_TOL).expect("Hadamard is unitary")
    }

    /// The coin with `a = e^{i phi_a} cos(theta)`, `b = e^{i phi_b} sin(theta)`
    /// and determinant `Δ = e^{i det_phase}`. Unitary by construction.
    pub fn from_angles(theta: f64, phi_a: f64, phi_b: f64, det_phase: f64) -> Coin {
        let a = C64::from_polar(theta.cos(), phi_a);
        let b = C64::from_polar(theta.sin(), phi_b);
        let delta = C64::from_polar(1.0, det_phase);
        let m = Mat2::new(a, b, -delta * b.conj(), delta * a.conj());
        validate_coin(m, DEFAULT_TOL).expect("angle parameterisation is unitary")
    }

    pub fn a(&self) -> C64 {
        self.a
    }
    pub fn b(&self) -> C64 {
        self.b
    }
    pub fn c(&self) -> C64 {
        self.c
    }
    pub fn d(&self) -> C64 {
        self.d
    }
    pub fn delta(&self) -> C64 {
        self.delta
    }
    pub fn branch(&self) -> CoinBranch {
        self.branch
    }
    pub fn is_generic(&self) -> bool {
        self.branch == CoinBranch::Generic
    }
    pub fn abs_a_sq(&self) -> f64 {
        self.a.norm_sqr()
    }
    pub fn abs_b_sq(&self) -> f64 {
        self.b.norm_sqr()
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, self.c, self.d)
    }

    /// Errors with [`WalkError::DegenerateCoin`] unless `abcd != 0`.
    pub(crate) fn require_generic(&self, what: &'static str) -> Result<()> {
        if self.is_generic() {
            Ok(())
        } else {
            Err(WalkError::DegenerateCoin(what))
        }
    }

    /// The literal matrix for one of `P, Q, R, S`.
    pub fn letter(&self, letter: Letter) -> Mat2 {
        let z = C64::new(0.0, 0.0);
        match letter {
            Letter::P => Mat2::new(self.a, self.b, z, z),
            Letter::Q => Mat2::new(z, z, self.c, self.d),
            Letter::R => Mat2::new(self.c, self.d, z, z),
            Letter::S => Mat2::new(z, z, self.a, self.b),
        }
    }
}

/// Free-function form of [`Coin::letter`].
pub fn letter_matrix(coin: &Coin, letter: Letter) -> Mat2 {
    coin.letter(letter)
}

/// One of the four generator matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    P,
    Q,
    R,
    S,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::P, Letter::Q, Letter::R, Letter::S];
}

/// The product table: `letter(x) · letter(y) = scalar · letter(z)`.
pub fn pqrs_product(coin: &Coin, x: Letter, y: Letter) -> (C64, Letter) {
    use Letter::*;
    let (a, b, c, d) = (coin.a, coin.b, coin.c, coin.d);
    // The left factor fixes the occupied matrix row, the right factor fixes
    // which row of U fills it.
    match (x, y) {
        (P, P) => (a, P),
        (P, Q) => (b, R),
        (P, R) => (a, R),
        (P, S) => (b, P),
        (Q, P) => (c, S),
        (Q, Q) => (d, Q),
        (Q, R) => (c, Q),
        (Q, S) => (d, S),
        (R, P) => (c, P),
        (R, Q) => (d, R),
        (R, R) => (c, R),
        (R, S) => (d, P),
        (S, P) => (a, S),
        (S, Q) => (b, Q),
        (S, R) => (a, Q),
        (S, S) => (b, S),
    }
}

/// A matrix written in the `P, Q, R, S` basis of a fixed coin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PqrsMatrix {
    pub p: C64,
    pub q: C64,
    pub r: C64,
    pub s: C64,
    pub coin: Coin,
}

impl PqrsMatrix {
    pub fn new(coin: Coin, p: C64, q: C64, r: C64, s: C64) -> Self {
        PqrsMatrix { p, q, r, s, coin }
    }

    pub fn coords(&self) -> [C64; 4] {
        [self.p, self.q, self.r, self.s]
    }

    /// `pP + qQ + rR + sS`.
    pub fn materialize(&self) -> Mat2 {
        Letter::ALL
            .iter()
            .zip(self.coords())
            .map(|(&l, k)| self.coin.letter(l).scale(k))
            .sum()
    }
}

/// Coordinates of `m` in the orthonormal basis `P, Q, R, S`.
///
/// Orthonormality only uses that the rows of `U` are orthonormal, so this
/// holds for every unitary coin, degenerate ones included.
pub fn basis_decompose(coin: &Coin, m: &Mat2) -> PqrsMatrix {
    let [p, q, r, s] = Letter::ALL.map(|l| coin.letter(l).inner(m));
    PqrsMatrix::new(*coin, p, q, r, s)
}

/// A normalized initial chirality state `(alpha, beta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qubit {
    alpha: C64,
    beta: C64,
}

impl Qubit {
    /// Validates `|alpha|^2 + |beta|^2 = 1` within [`DEFAULT_TOL`].
    pub fn new(alpha: C64, beta: C64) -> Result<Qubit> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(WalkError::NotNormalized { norm });
        }
        Ok(Qubit { alpha, beta })
    }

    /// Rescales `(alpha, beta)` to unit norm. Fails only on the zero vector.
    pub fn normalized(alpha: C64, beta: C64) -> Result<Qubit> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(WalkError::NotNormalized { norm: norm * norm });
        }
        Ok(Qubit {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    /// `(1/√2, i/√2)`.
    pub fn symmetric() -> Qubit {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Qubit {
            alpha: C64::new(h, 0.0),
            beta: C64::new(0.0, h),
        }
    }

    /// Pure left chirality `(1, 0)`.
    pub fn left() -> Qubit {
        Qubit {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    /// Pure right chirality `(0, 1)`.
    pub fn right() -> Qubit {
        Qubit {
            alpha: C64::new(0.0, 0.0),
            beta: C64::new(1.0, 0.0),
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }
    pub fn beta(&self) -> C64 {
        self.beta
    }
    pub fn vector(&self) -> [C64; 2] {
        [self.alpha, self.beta]
    }

    /// The same state multiplied by a global phase.
    pub fn with_phase(&self, phase: f64) -> Qubit {
        let u = C64::from_polar(1.0, phase);
        Qubit {
            alpha: u * self.alpha,
            beta: u * self.beta,
        }
    }
}

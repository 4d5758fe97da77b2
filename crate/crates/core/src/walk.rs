//! Exact time evolution of the amplitude field.
//!
//! The field at time `n` lives on positions `k ∈ {-n, -n + 2, ..., n}`; the
//! other parity class is identically zero and is not stored. One step maps
//!
//! ```text
//! Ψ_k^{(n+1)} = Q Ψ_{k-1}^{(n)} + P Ψ_{k+1}^{(n)}
//! ```
//!
//! No renormalisation is ever applied: drift of the total probability from
//! one is the numerical-health signal.

use nalgebra::DMatrix;

use crate::coin::{Coin, Letter, Mat2, Qubit};
use crate::error::{Result, WalkError};
use crate::numeric::{ComplexNeumaier, Neumaier};
use crate::C64;

/// Largest `N` accepted by [`dense_unitary_check`].
pub const DENSE_CAP: usize = 64;

const ZERO: [C64; 2] = [C64::new(0.0, 0.0), C64::new(0.0, 0.0)];

/// Two-component amplitudes `(Ψ_L, Ψ_R)` on the reachable lattice at time `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeField {
    n: usize,
    // amps[j] sits at position k = -n + 2j.
    amps: Vec<[C64; 2]>,
}

impl AmplitudeField {
    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, k: i64) -> Option<usize> {
        let offset = k + self.n as i64;
        if offset < 0 || offset % 2 != 0 || offset / 2 > self.n as i64 {
            None
        } else {
            Some((offset / 2) as usize)
        }
    }

    /// Amplitude vector at `k`, zero off the reachable lattice.
    pub fn get(&self, k: i64) -> [C64; 2] {
        self.index(k).map_or(ZERO, |j| self.amps[j])
    }

    /// `(k, Ψ_k)` for every reachable position, left to right.
    pub fn iter(&self) -> impl Iterator<Item = (i64, [C64; 2])> + '_ {
        let n = self.n as i64;
        self.amps.iter().enumerate().map(move |(j, v)| (2 * j as i64 - n, *v))
    }

    pub fn total_norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
            .collect::<Neumaier>()
            .value()
    }
}

/// The time-zero field with `(alpha, beta)` at the origin.
pub fn init(qubit: &Qubit) -> AmplitudeField {
    AmplitudeField {
        n: 0,
        amps: vec![qubit.vector()],
    }
}

fn step_into(p: &Mat2, q: &Mat2, src: &[[C64; 2]], dst: &mut Vec<[C64; 2]>) {
    let n = src.len() - 1;
    dst.clear();
    dst.resize(n + 2, ZERO);
    for (j, out) in dst.iter_mut().enumerate() {
        let mut acc = ZERO;
        if j >= 1 {
            let v = q.apply(src[j - 1]);
            acc = [acc[0] + v[0], acc[1] + v[1]];
        }
        if j <= n {
            let v = p.apply(src[j]);
            acc = [acc[0] + v[0], acc[1] + v[1]];
        }
        *out = acc;
    }
}

/// One time step. The input field is left untouched.
pub fn step(coin: &Coin, field: &AmplitudeField) -> AmplitudeField {
    let mut amps = Vec::with_capacity(field.amps.len() + 1);
    step_into(&coin.letter(Letter::P), &coin.letter(Letter::Q), &field.amps, &mut amps);
    AmplitudeField { n: field.n + 1, amps }
}

/// The field after `n` steps, using two alternating buffers.
pub fn evolve(coin: &Coin, qubit: &Qubit, n: usize) -> AmplitudeField {
    let (p, q) = (coin.letter(Letter::P), coin.letter(Letter::Q));
    let mut cur = Vec::with_capacity(n + 1);
    let mut next = Vec::with_capacity(n + 1);
    cur.push(qubit.vector());
    for _ in 0..n {
        step_into(&p, &q, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    AmplitudeField { n, amps: cur }
}

/// The law of `X_n` on the reachable lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    n: usize,
    // probs[j] is P(X_n = -n + 2j).
    probs: Vec<f64>,
}

impl Distribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(X_n = k)`, zero off the reachable lattice.
    pub fn prob(&self, k: i64) -> f64 {
        let offset = k + self.n as i64;
        if offset < 0 || offset % 2 != 0 || offset / 2 > self.n as i64 {
            0.0
        } else {
            self.probs[(offset / 2) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.n as i64;
        self.probs.iter().enumerate().map(move |(j, &p)| (2 * j as i64 - n, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().copied().collect::<Neumaier>().value()
    }

    /// `Σ_k k^m P(X_n = k)`.
    pub fn moment(&self, m: u32) -> f64 {
        self.iter()
            .map(|(k, p)| (k as f64).powi(m as i32) * p)
            .collect::<Neumaier>()
            .value()
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    /// `Σ_k e^{iξk} P(X_n = k)`.
    pub fn char_fn(&self, xi: f64) -> C64 {
        let mut acc = ComplexNeumaier::default();
        for (k, p) in self.iter() {
            acc.add(C64::from_polar(p, xi * k as f64));
        }
        acc.value()
    }

    /// `max_k |P(X_n = k) - P(X_n = -k)|`.
    pub fn max_asymmetry(&self) -> f64 {
        let len = self.probs.len();
        (0..len / 2 + 1)
            .map(|j| (self.probs[j] - self.probs[len - 1 - j]).abs())
            .fold(0.0, f64::max)
    }
}

impl From<&AmplitudeField> for Distribution {
    fn from(field: &AmplitudeField) -> Self {
        Distribution {
            n: field.n,
            probs: field.amps.iter().map(|v| v[0].norm_sqr() + v[1].norm_sqr()).collect(),
        }
    }
}

/// The law of `X_n` for the walk started from `qubit`.
pub fn distribution(coin: &Coin, qubit: &Qubit, n: usize) -> Distribution {
    Distribution::from(&evolve(coin, qubit, n))
}

/// The `(4N + 2) × (4N + 2)` evolution matrix on the cycle of `2N + 1` sites,
/// site `i` holding rows `2i, 2i + 1`. Block row `i` has `Q` at block column
/// `i - 1` and `P` at `i + 1`, indices modulo `2N + 1`.
pub fn dense_evolution_matrix(coin: &Coin, big_n: usize) -> Result<DMatrix<C64>> {
    if big_n > DENSE_CAP {
        return Err(WalkError::CapExceeded {
            what: "N",
            value: big_n,
            cap: DENSE_CAP,
        });
    }
    let sites = 2 * big_n + 1;
    let mut u = DMatrix::from_element(2 * sites, 2 * sites, C64::new(0.0, 0.0));
    let (p, q) = (coin.letter(Letter::P), coin.letter(Letter::Q));
    for i in 0..sites {
        for (block, col) in [(&q, (i + sites - 1) % sites), (&p, (i + 1) % sites)] {
            for r in 0..2 {
                for c in 0..2 {
                    u[(2 * i + r, 2 * col + c)] += block.get(r, c);
                }
            }
        }
    }
    Ok(u)
}

/// `max |(U_N* U_N - I)_{ij}|` for the dense evolution matrix.
pub fn dense_unitary_check(coin: &Coin, big_n: usize) -> Result<f64> {
    let u = dense_evolution_matrix(coin, big_n)?;
    let gram = u.adjoint() * &u;
    let dev = gram
        .iter()
        .enumerate()
        .map(|(idx, z)| {
            let (r, c) = (idx % gram.nrows(), idx / gram.nrows());
            let id = if r == c { 1.0 } else { 0.0 };
            (z - id).norm()
        })
        .fold(0.0, f64::max);
    Ok(dev)
}

//! Small numeric helpers shared by the closed-form modules.

use crate::C64;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub(crate) fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

/// Exact binomial coefficient, `None` on `u128` overflow.
pub(crate) fn binomial_exact(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) is divisible by i since acc = C(n - k + i - 1, i - 1).
        acc = acc.checked_mul(n as u128 - k as u128 + i)? / i;
    }
    Some(acc)
}

/// Binomial coefficient `C(n, k)` as `f64`, zero whenever `n < 0`, `k < 0`
/// or `k > n`.
///
/// Values that fit in 128 bits are computed exactly before the single
/// conversion to floating point.
pub fn binomial(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return 0.0;
    }
    match binomial_exact(n as u64, k as u64) {
        Some(v) => v as f64,
        None => {
            let k = k.min(n - k);
            (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
        }
    }
}

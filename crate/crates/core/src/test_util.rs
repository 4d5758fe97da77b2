use rand::Rng;

use crate::coin::{Coin, Mat2, Qubit};
use crate::C64;

/// A random coin with `abcd != 0`, `|a|` kept away from 0 and 1.
pub(crate) fn random_coin<R: Rng>(rng: &mut R) -> Coin {
    let tau = std::f64::consts::TAU;
    let theta = rng.gen_range(0.15..std::f64::consts::FRAC_PI_2 - 0.15);
    Coin::from_angles(
        theta,
        rng.gen_range(0.0..tau),
        rng.gen_range(0.0..tau),
        rng.gen_range(0.0..tau),
    )
}

pub(crate) fn random_qubit<R: Rng>(rng: &mut R) -> Qubit {
    let tau = std::f64::consts::TAU;
    let t = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    Qubit::new(
        C64::from_polar(t.cos(), rng.gen_range(0.0..tau)),
        C64::from_polar(t.sin(), rng.gen_range(0.0..tau)),
    )
    .unwrap()
}

pub(crate) fn random_mat2<R: Rng>(rng: &mut R) -> Mat2 {
    let mut v = [0.0; 8];
    for x in &mut v {
        *x = rng.gen_range(-1.0..1.0);
    }
    Mat2::from_re_im(v)
}

//! Engine and closed forms against exact rational arithmetic.

mod common;

use common::{exact_moment, hadamard_exact, jacobi_exact, rational, to_f64};
use qwalk::analytic::{moment_jacobi, prob_closed_form, WalkParams};
use qwalk::coin::{Coin, Qubit};
use qwalk::limit::asymptotics_envelope;
use qwalk::special::{jacobi_p, jacobi_p_recurrence, JacobiArgs};
use qwalk::walk::distribution;
use qwalk::C64;

/// A qubit with the Gaussian-integer amplitudes it was normalized from.
type GaussCase = (Qubit, (i64, i64), (i64, i64));

fn cases() -> Vec<GaussCase> {
    let q = |a: (i64, i64), b: (i64, i64)| {
        Qubit::normalized(C64::new(a.0 as f64, a.1 as f64), C64::new(b.0 as f64, b.1 as f64)).unwrap()
    };
    vec![
        (q((1, 0), (0, 0)), (1, 0), (0, 0)),
        (q((0, 0), (1, 0)), (0, 0), (1, 0)),
        (q((1, 0), (0, 1)), (1, 0), (0, 1)),
        (q((3, 1), (-2, 5)), (3, 1), (-2, 5)),
    ]
}

#[test]
fn engine_reproduces_exact_hadamard_laws() {
    let coin = Coin::hadamard();
    for (qubit, alpha, beta) in cases() {
        for n in [1, 4, 17, 50, 200] {
            let dist = distribution(&coin, &qubit, n);
            for (k, p) in hadamard_exact(alpha, beta, n) {
                assert!((dist.prob(k) - to_f64(&p)).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }
}

#[test]
fn symmetric_n4_is_one_six_two() {
    let law = hadamard_exact((1, 0), (0, 1), 4);
    let want = [(-4, 1), (-2, 6), (0, 2), (2, 6), (4, 1)];
    for ((k, p), (wk, w)) in law.iter().zip(want) {
        assert_eq!(*k, wk);
        assert_eq!(*p, rational(w, 16));
    }
}

#[test]
fn closed_form_probabilities_reproduce_exact_laws() {
    let coin = Coin::hadamard();
    for (qubit, alpha, beta) in cases() {
        let params = WalkParams::new(coin, qubit);
        for n in [1, 2, 9, 14] {
            for (k, p) in hadamard_exact(alpha, beta, n) {
                let got = prob_closed_form(&params, n, k).unwrap();
                assert!((got - to_f64(&p)).abs() < 1e-12, "n={n} k={k}");
            }
        }
    }
}

#[test]
fn jacobi_route_moments_at_n500() {
    let coin = Coin::hadamard();
    let n = 500;
    for (qubit, alpha, beta) in cases() {
        let law = hadamard_exact(alpha, beta, n);
        let params = WalkParams::new(coin, qubit);
        for m in 1..=4 {
            let want = to_f64(&exact_moment(&law, m));
            let got = moment_jacobi(&params, n, m).unwrap();
            let scale = (n as f64).powi(m as i32);
            assert!((got - want).abs() < 1e-10 * scale, "m={m}: {got} vs {want}");
        }
    }
}

#[test]
fn recurrence_tracks_exact_jacobi_at_n160() {
    let n = 160u64;
    for (num, den) in [(1, 2), (9, 25), (81, 100)] {
        let abs_a_sq = num as f64 / den as f64;
        let x = 2.0 * abs_a_sq - 1.0;
        let xr = rational(2 * num - den, den);
        for k in (1..=n / 2).step_by(7) {
            for i in 0..=1u64 {
                let exact = to_f64(&jacobi_exact(k - 1, i, n - 2 * k, &xr));
                let args = JacobiArgs::new(k as usize - 1, i as f64, (n - 2 * k) as f64, x);
                let rec = jacobi_p_recurrence(&args);
                // Compare on the scale where the values are O(1).
                let norm = abs_a_sq.powf((n - 2 * k) as f64 / 2.0) * (n as f64).sqrt();
                assert!((rec - exact).abs() * norm < 1e-10, "|a|²={abs_a_sq} k={k} i={i}");
                assert!(
                    (rec - exact).abs() <= 1e-11 * exact.abs().max(1.0),
                    "|a|²={abs_a_sq} k={k} i={i}"
                );
            }
        }
    }
}

#[test]
fn series_route_agrees_at_moderate_degree() {
    let n = 40u64;
    let xr = rational(7, 25);
    // The alternating series gives up several digits to cancellation.
    for k in 1..=n / 2 {
        let exact = to_f64(&jacobi_exact(k - 1, 1, n - 2 * k, &xr));
        let series = jacobi_p(&JacobiArgs::new(k as usize - 1, 1.0, (n - 2 * k) as f64, 0.28)).unwrap();
        assert!(
            (series - exact).abs() <= 1e-7 * exact.abs().max(1.0),
            "k={k}: {series} vs {exact}"
        );
    }
}

#[test]
fn hadamard_envelope_values_are_exact() {
    // |a|² = 1/2 makes the Jacobi argument exactly 0.
    let zero = rational(0, 1);
    let coin = Coin::hadamard();
    for n in [40u64, 80, 160] {
        let k = 2 * n / 5;
        for i in 0..=1u64 {
            let exact = to_f64(&jacobi_exact(k - 1, i, n - 2 * k, &zero));
            let want = exact.abs() * 0.5f64.powf((n - 2 * k) as f64 / 2.0) * (n as f64).sqrt();
            let got = asymptotics_envelope(&coin, n as usize, k as usize, i as u8).unwrap();
            assert!(
                (got - want).abs() <= 1e-10 * want.max(1e-3),
                "n={n} i={i}: {got} vs {want}"
            );
        }
    }
}

use std::f64::consts::PI;

use qwalk::analytic::{char_fn_with, moment_with, prob_with, SumRoute, WalkParams};
use qwalk::coin::{Coin, Qubit};
use qwalk::limit::{ks_convergence, two_point_limit, LimitDensity};
use qwalk::paths::{closed_form_xi, enumerate_xi, StepCount};
use qwalk::symmetry::{classify, mean_zero_check, verify_symmetry, DEFAULT_CLASSIFY_TOL};
use qwalk::walk;
use qwalk::WalkError;

use crate::output::{Cell, Table};
use crate::CliError;

pub const DIST_TOL: f64 = 1e-8;
pub const CHARFN_TOL: f64 = 1e-9;
/// Relative to `max(1, n^m)`.
pub const MOMENT_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-9;
pub const MASS_TOL: f64 = 1e-8;

/// A finished table plus the self-check failures found while building it.
pub struct Report {
    pub table: Table,
    pub failures: Vec<String>,
}

impl Report {
    fn new(table: Table) -> Self {
        Report {
            table,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn input(e: WalkError) -> CliError {
    CliError::Input(e.to_string())
}

fn route_result<T>(r: qwalk::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(WalkError::DegenerateCoin(_)) => Ok(None),
        Err(e) => Err(input(e)),
    }
}

pub fn dist(coin: &Coin, qubit: &Qubit, n: usize) -> Result<Report, CliError> {
    let params = WalkParams::new(*coin, *qubit);
    let closed_available = coin.is_generic();
    let columns = if closed_available {
        vec!["k", "p_engine", "p_closed", "abs_diff"]
    } else {
        vec!["k", "p_engine"]
    };
    let mut report = Report::new(Table::new("dist", columns));
    let engine = walk::distribution(coin, qubit, n);
    for (k, p) in engine.iter() {
        if !closed_available {
            // Degenerate walks reach only a few sites; list those.
            if p != 0.0 {
                report.table.push(vec![k.into(), p.into()]);
            }
            continue;
        }
        let closed = if n == 0 {
            None
        } else {
            Some(prob_with(&params, n, k, SumRoute::for_n(n)).map_err(input)?)
        };
        let diff = closed.map(|c| (c - p).abs());
        if let Some(d) = diff {
            report.check(d <= DIST_TOL, || {
                format!("dist: |p_engine - p_closed| = {d:e} at k = {k}")
            });
        }
        report.table.push(vec![k.into(), p.into(), closed.into(), diff.into()]);
    }
    Ok(report)
}

/// `points` values evenly spaced on `[-π, π]`, with `0` exact for odd counts.
pub fn xi_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let span = (points - 1) as f64;
            (0..points).map(|j| PI * (2.0 * j as f64 - span) / span).collect()
        }
    }
}

pub fn charfn(coin: &Coin, qubit: &Qubit, n: usize, xis: &[f64]) -> Result<Report, CliError> {
    let params = WalkParams::new(*coin, *qubit);
    let engine = walk::distribution(coin, qubit, n);
    let mut report = Report::new(Table::new(
        "charfn",
        vec!["xi", "re_closed", "im_closed", "re_engine", "im_engine", "abs_diff"],
    ));
    for &xi in xis {
        let closed = char_fn_with(&params, n, xi, SumRoute::for_n(n)).map_err(input)?;
        let direct = engine.char_fn(xi);
        let diff = (closed - direct).norm();
        report.check(diff <= CHARFN_TOL, || {
            format!("charfn: |closed - engine| = {diff:e} at xi = {xi}")
        });
        report.table.push(vec![
            xi.into(),
            closed.re.into(),
            closed.im.into(),
            direct.re.into(),
            direct.im.into(),
            diff.into(),
        ]);
    }
    Ok(report)
}

pub fn moments(coin: &Coin, qubit: &Qubit, n: usize, m_max: u32) -> Result<Report, CliError> {
    let params = WalkParams::new(*coin, *qubit);
    let engine = walk::distribution(coin, qubit, n);
    let mut report = Report::new(Table::new("moments", vec!["m", "closed", "engine", "abs_diff"]));
    for m in 1..=m_max {
        let closed = moment_with(&params, n, m, SumRoute::for_n(n)).map_err(input)?;
        let direct = engine.moment(m);
        let diff = (closed - direct).abs();
        let scale = (n as f64).powi(m as i32).max(1.0);
        report.check(diff <= MOMENT_TOL * scale, || {
            format!("moments: |closed - engine| = {diff:e} at m = {m}")
        });
        report
            .table
            .push(vec![Cell::Int(m.into()), closed.into(), direct.into(), diff.into()]);
    }
    Ok(report)
}

pub fn symmetry(coin: &Coin, qubit: &Qubit, n_max: usize) -> Result<Report, CliError> {
    let params = WalkParams::new(*coin, *qubit);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let algebraic = route_result(classify(coin, qubit, DEFAULT_CLASSIFY_TOL))?;
    let algebraic_gap = (qubit.alpha().norm() - h)
        .abs()
        .max((qubit.beta().norm() - h).abs())
        .max(params.cross().abs());
    let mirror = verify_symmetry(coin, qubit, n_max);
    let worst_asym = mirror.evidence.iter().map(|&(_, a)| a).fold(0.0, f64::max);
    let zero_mean = mean_zero_check(coin, qubit, n_max);
    let mut worst_mean = 0.0f64;
    for n in 1..=n_max.max(3) {
        let mean = moment_with(&params, n, 1, SumRoute::for_n(n)).map_err(input)?;
        worst_mean = worst_mean.max(mean.abs());
    }

    let mut report = Report::new(Table::new("symmetry", vec!["check", "verdict", "worst"]));
    if let Some(a) = algebraic {
        report.check(a == mirror.in_phi_perp && a == zero_mean, || {
            format!(
                "symmetry: tests disagree (algebraic {a}, mirror {}, zero_mean {zero_mean})",
                mirror.in_phi_perp
            )
        });
    }
    // Only the engine's verdict is meaningful for every coin.
    let verdict = mirror.in_phi_perp;
    let t = &mut report.table;
    t.push(vec![
        Cell::Text("algebraic".into()),
        algebraic.into(),
        algebraic_gap.into(),
    ]);
    t.push(vec![
        Cell::Text("mirror".into()),
        mirror.in_phi_perp.into(),
        worst_asym.into(),
    ]);
    t.push(vec![
        Cell::Text("zero_mean".into()),
        zero_mean.into(),
        worst_mean.into(),
    ]);
    t.push(vec![Cell::Text("symmetric".into()), verdict.into(), Cell::Empty]);
    t.extra("n_max", n_max);
    let evidence = mirror
        .evidence
        .iter()
        .map(|&(n, a)| serde_json::json!({ "n": n, "max_asymmetry": Cell::json_of(a) }))
        .collect();
    t.extra_value("evidence", serde_json::Value::Array(evidence));
    Ok(report)
}

pub fn limit(coin: &Coin, qubit: &Qubit, points: usize) -> Result<Report, CliError> {
    if coin.is_generic() {
        let ld = LimitDensity::new(*coin, *qubit).map_err(input)?;
        let (lo, hi) = ld.support();
        let mut report = Report::new(Table::new("limit", vec!["x", "density", "cdf"]));
        let span = (points + 1) as f64;
        for j in 0..points {
            // Interior points only: the density is singular at the support edges.
            let x = hi * (2.0 * (j + 1) as f64 - span) / span;
            debug_assert!(x > lo && x < hi);
            report
                .table
                .push(vec![x.into(), ld.density(x).into(), ld.limit_cdf(x).into()]);
        }
        let mass = ld.total_mass();
        let mass_hyp = ld.total_mass_hypergeometric().map_err(input)?;
        report.check((mass - 1.0).abs() <= MASS_TOL, || {
            format!("limit: quadrature mass {mass}")
        });
        report.check((mass_hyp - 1.0).abs() <= MASS_TOL, || {
            format!("limit: hypergeometric mass {mass_hyp}")
        });
        let t = &mut report.table;
        t.extra("support_edge", hi);
        t.extra("lambda", ld.lambda());
        t.extra("mean", ld.limit_moment(1));
        t.extra("second_moment", ld.limit_moment(2));
        t.extra("mass_quadrature", mass);
        t.extra("mass_hypergeometric", mass_hyp);
        Ok(report)
    } else if coin.abs_b_sq() == 0.0 {
        let law = two_point_limit(qubit);
        let mut report = Report::new(Table::new("limit", vec!["x", "mass"]));
        report.table.push(vec![(-1.0).into(), law.p_minus.into()]);
        report.table.push(vec![1.0.into(), law.p_plus.into()]);
        report.table.extra("mean", law.moment(1));
        report.table.extra("second_moment", law.moment(2));
        Ok(report)
    } else {
        Err(input(WalkError::DegenerateCoin("the limit law")))
    }
}

pub fn converge(coin: &Coin, qubit: &Qubit, n_list: &[usize]) -> Result<Report, CliError> {
    let both: Vec<usize> = n_list.iter().flat_map(|&n| [n, n + 1]).collect();
    let raw = ks_convergence(coin, qubit, &both).map_err(input)?;
    let mut report = Report::new(Table::new("converge", vec!["n", "ks", "ks_next", "smoothed"]));
    for pair in raw.entries.chunks(2) {
        let ((n, ks), (_, next)) = (pair[0], pair[1]);
        report
            .table
            .push(vec![n.into(), ks.into(), next.into(), (0.5 * (ks + next)).into()]);
    }
    Ok(report)
}

/// Path enumeration against the closed forms and the engine, for `n <= n_cap`.
pub fn oracle(coin: &Coin, qubit: &Qubit, n_cap: usize) -> Result<Report, CliError> {
    let mut report = Report::new(Table::new("oracle", vec!["n", "xi_max_diff", "prob_max_diff"]));
    let phi = qubit.vector();
    for n in 1..=n_cap {
        let engine = walk::distribution(coin, qubit, n);
        let (mut xi_diff, mut prob_diff) = (0.0f64, 0.0f64);
        for m in 0..=n {
            let sc = StepCount::new(n - m, m);
            let xi = enumerate_xi(coin, sc).map_err(input)?;
            if let Some(closed) = route_result(closed_form_xi(coin, sc))? {
                xi_diff = xi_diff.max(closed.max_abs_diff(&xi));
            }
            let v = xi.apply(phi);
            let p = v[0].norm_sqr() + v[1].norm_sqr();
            prob_diff = prob_diff.max((p - engine.prob(sc.k())).abs());
        }
        report.check(xi_diff <= ORACLE_TOL && prob_diff <= ORACLE_TOL, || {
            format!("oracle: mismatch at n = {n} (xi {xi_diff:e}, prob {prob_diff:e})")
        });
        report.table.push(vec![n.into(), xi_diff.into(), prob_diff.into()]);
    }
    Ok(report)
}

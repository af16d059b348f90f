//! Self-check suite behind `tdq verify`.
//!
//! Every check reduces to one measured number compared against a limit;
//! trend checks count violated inequalities against a limit of zero.

use std::f64::consts::{E, PI};

use crate::dynamics::{
    invariant_value, pinney_residual, rho_analytic, solve_classical_with, solve_pinney_with,
    ConductivityModel, Dopri5, SuperconductorParams,
};
use crate::error::Result;
use crate::information::{
    disequilibrium_closed_form, disequilibrium_quadrature, entropy_closed_form,
    entropy_quadrature, measures_over_time,
};
use crate::observables::{density, energy_mean, integrate_density, moments, uncertainty_product, QuantumSnapshot};
use crate::special::{
    adaptive_simpson, bell_partial, bessel_pair, dawson, factorial, gauss_legendre, hermite_function,
    hyp2f2_special,
};

/// Every σ₀ that appears in the figures.
const FIGURE_SIGMA0: [f64; 8] = [0.4, 0.5, 0.6, 0.8, 1.5, 2.0, 2.5, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Required,
    /// Reported but never fails the run.
    Informational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub limit: f64,
    pub kind: CheckKind,
}

impl Check {
    fn required(name: &str, measured: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            limit,
            kind: CheckKind::Required,
        }
    }

    fn info(name: &str, measured: f64, limit: f64) -> Self {
        Self {
            kind: CheckKind::Informational,
            ..Self::required(name, measured, limit)
        }
    }

    pub fn passed(&self) -> bool {
        self.measured <= self.limit
    }

    pub fn failed(&self) -> bool {
        self.kind == CheckKind::Required && !self.passed()
    }

    pub fn status(&self) -> &'static str {
        match (self.kind, self.passed()) {
            (CheckKind::Informational, _) => "info",
            (CheckKind::Required, true) => "pass",
            (CheckKind::Required, false) => "fail",
        }
    }

    pub fn report_line(&self) -> String {
        format!(
            "{:<4}  {:<36} measured {:.6e}  limit {:.1e}",
            self.status().to_uppercase(),
            self.name,
            self.measured,
            self.limit
        )
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so a broken evaluation can never pass
    values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn spread(values: &[f64]) -> f64 {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

fn fig(sigma0: f64) -> Result<(SuperconductorParams, ConductivityModel)> {
    let p = SuperconductorParams::figure_units(sigma0)?;
    let m = ConductivityModel::hyperbolic(&p);
    Ok((p, m))
}

fn snapshot(sigma0: f64, n: u32, t: f64) -> Result<QuantumSnapshot> {
    let (p, m) = fig(sigma0)?;
    QuantumSnapshot::assemble(&p, &m, n, &rho_analytic(&p, t)?)
}

/// Runs every check. `solver_tol` drives the integrator of the Pinney and
/// classical-trajectory checks, whose pass limits stay fixed at 1e-6.
pub fn run_suite(solver_tol: f64) -> Result<Vec<Check>> {
    let solver = Dopri5::with_tolerance(solver_tol);
    let mut checks = special_checks()?;
    checks.extend(dynamics_checks(&solver)?);
    checks.extend(observable_checks()?);
    checks.extend(information_checks()?);
    checks.extend(trend_checks()?);
    Ok(checks)
}

fn special_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let mut wronskian = Vec::new();
    for nu in [0.0, 0.3, 0.5, 1.0, 2.5, 4.0, 7.2, 10.0] {
        for x in [0.1, 0.5, 1.0, 2.0, 3.5, 7.0, 12.0, 25.0, 50.0] {
            let b = bessel_pair(nu, x)?;
            wronskian.push(((b.j * b.dy - b.dj * b.y) * PI * x / 2.0 - 1.0).abs());
        }
    }
    out.push(Check::required("bessel_wronskian", max_of(wronskian), 1e-8));

    let mut half = Vec::new();
    for i in 1..=100 {
        let x = 0.5 * i as f64;
        let amp = (2.0 / (PI * x)).sqrt();
        let b = bessel_pair(0.5, x)?;
        let b3 = bessel_pair(1.5, x)?;
        half.push((b.j - amp * x.sin()).abs() / amp);
        half.push((b.y + amp * x.cos()).abs() / amp);
        half.push((b3.j - amp * (x.sin() / x - x.cos())).abs() / amp);
        half.push((b3.y + amp * (x.cos() / x + x.sin())).abs() / amp);
    }
    out.push(Check::required("bessel_half_integer", max_of(half), 1e-12));

    let a = [0.7, -1.3, 2.1, 0.4, -0.9, 1.6, -2.2, 0.35];
    let mut bell = Vec::new();
    for m in 1..=8 {
        for l in 1..=m {
            let exact = bell_by_partitions(m, l, &a);
            bell.push((bell_partial(m, l, &a)? - exact).abs() / exact.abs().max(1.0));
        }
    }
    out.push(Check::required("bell_recurrence_vs_partitions", max_of(bell), 1e-12));

    let rule = gauss_legendre(240, -14.0, 14.0)?;
    let mut ortho = Vec::new();
    for n in 0..=12 {
        for m in 0..=n {
            let v = rule.integrate(|x| hermite_function(n, x) * hermite_function(m, x));
            ortho.push((v - if n == m { 1.0 } else { 0.0 }).abs());
        }
    }
    out.push(Check::required("hermite_orthogonality", max_of(ortho), 1e-8));

    let mut hyp = Vec::new();
    for i in 1..=12 {
        let x = 0.5 * i as f64;
        let lhs = x * x * hyp2f2_special(-x * x)?;
        let rhs = 2.0 * adaptive_simpson(dawson, 0.0, x, 1e-13);
        hyp.push((lhs - rhs).abs());
    }
    out.push(Check::required("hypergeometric_dawson_identity", max_of(hyp), 1e-9));
    Ok(out)
}

/// B_{m,l} straight from its partition sum.
fn bell_by_partitions(m: usize, l: usize, a: &[f64]) -> f64 {
    fn walk(rem: usize, blocks: usize, max_part: usize, counts: &mut Vec<usize>, a: &[f64], m: usize, acc: &mut f64) {
        if rem == 0 {
            if blocks == 0 {
                let mut term = factorial(m as u32);
                for (size, &j) in counts.iter().enumerate().skip(1).filter(|(_, &j)| j > 0) {
                    term *= (a[size - 1] / factorial(size as u32)).powi(j as i32) / factorial(j as u32);
                }
                *acc += term;
            }
            return;
        }
        if blocks == 0 {
            return;
        }
        for part in (1..=max_part.min(rem)).rev() {
            counts[part] += 1;
            walk(rem - part, blocks - 1, part, counts, a, m, acc);
            counts[part] -= 1;
        }
    }
    let mut acc = 0.0;
    walk(m, l, m, &mut vec![0; m + 1], a, m, &mut acc);
    acc
}

fn dynamics_checks(solver: &Dopri5) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    // five-point stencil on ρ̇: ρ''' reaches ~1e3 at t = 0 for σ₀ = 3
    let h = 1e-3;
    let mut residuals = Vec::new();
    for sigma0 in FIGURE_SIGMA0 {
        let (p, m) = fig(sigma0)?;
        for t in [0.0, 0.5, 1.0, 2.5, 5.0] {
            let v = |k: f64| rho_analytic(&p, t + k * h).map(|s| s.rho_dot);
            let ddot = (v(-2.0)? - 8.0 * v(-1.0)? + 8.0 * v(1.0)? - v(2.0)?) / (12.0 * h);
            residuals.push(pinney_residual(&p, &m, &rho_analytic(&p, t)?, ddot));
        }
    }
    out.push(Check::required("pinney_analytic_residual", max_of(residuals), 1e-6));

    let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.05).collect();
    let mut gaps = Vec::new();
    for sigma0 in [0.5, 2.0, 3.0] {
        let (p, m) = fig(sigma0)?;
        let s0 = rho_analytic(&p, 0.0)?;
        let numeric = solve_pinney_with(&p, &m, s0.rho, s0.rho_dot, &grid, solver)?;
        for st in numeric {
            gaps.push((st.rho - rho_analytic(&p, st.t)?.rho).abs());
        }
    }
    out.push(Check::required("pinney_numeric_vs_analytic", max_of(gaps), 1e-6));

    let mut drift = Vec::new();
    for (sigma0, q0, q_dot0) in [(0.5, 1.0, 0.0), (2.0, 0.5, 1.0), (3.0, -1.0, 0.3)] {
        let (p, m) = fig(sigma0)?;
        let traj = solve_classical_with(&p, &m, q0, q_dot0, &grid, solver)?;
        let i0 = invariant_value(&p, &m, &traj[0], &rho_analytic(&p, 0.0)?)?;
        for cs in &traj {
            let i = invariant_value(&p, &m, cs, &rho_analytic(&p, cs.t)?)?;
            drift.push(((i - i0) / i0).abs());
        }
    }
    out.push(Check::required("invariant_conservation", max_of(drift), 1e-6));
    Ok(out)
}

fn observable_checks() -> Result<Vec<Check>> {
    let mut norm = Vec::new();
    let mut q2 = Vec::new();
    let mut deficit = Vec::new();
    let mut consistency = Vec::new();
    for sigma0 in FIGURE_SIGMA0 {
        for t in [0.0, 1.0, 2.5, 5.0] {
            for n in 0..=4 {
                let s = snapshot(sigma0, n, t)?;
                norm.push((integrate_density(&s, |_, p| p)? - 1.0).abs());
                q2.push((integrate_density(&s, |q, p| q * q * p)? - moments(&s).q2).abs());
                let u = uncertainty_product(&s);
                deficit.push((s.eigenvalue() - u).max(0.0));
                let m = moments(&s);
                consistency.push((u - (m.q2 * m.phi2).sqrt()).abs());
                let h = m.phi2 / (2.0 * s.l * s.l) + 0.5 * s.omega_sq * m.q2;
                consistency.push((energy_mean(&s) - h).abs() / h.abs().max(1.0));
            }
        }
    }
    // at ρ̇ = 0 the floor is attained exactly
    let still = QuantumSnapshot {
        rho_dot: 0.0,
        ..snapshot(2.0, 3, 1.0)?
    };
    let equality = (uncertainty_product(&still) - still.eigenvalue()).abs();
    Ok(vec![
        Check::required("density_normalization", max_of(norm), 1e-8),
        Check::required("second_moment_quadrature", max_of(q2), 1e-7),
        Check::required("uncertainty_floor", max_of(deficit), 1e-12),
        Check::required("uncertainty_floor_equality", equality, 0.0),
        Check::required("moment_energy_consistency", max_of(consistency), 1e-12),
    ])
}

fn information_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let mut dual = Vec::new();
    for sigma0 in [0.5, 2.0, 3.0] {
        for t in [0.0, 2.5, 5.0] {
            for n in 0..=3 {
                let s = snapshot(sigma0, n, t)?;
                dual.push((disequilibrium_closed_form(&s)? - disequilibrium_quadrature(&s)?).abs());
            }
        }
    }
    out.push(Check::required("disequilibrium_dual_method", max_of(dual), 1e-8));

    let unit = |n| QuantumSnapshot {
        n,
        t: 0.0,
        rho: 1.0,
        rho_dot: 0.0,
        l: 1.0,
        omega_sq: 1.0,
        hbar: 1.0,
        phase: 0.0,
    };
    let s0 = snapshot(2.0, 0, 1.0)?;
    let hand = [
        (disequilibrium_quadrature(&s0)? - 1.0 / (s0.rho * (2.0 * PI * s0.hbar).sqrt())).abs(),
        (disequilibrium_quadrature(&unit(1))? - 3.0 / (4.0 * (2.0 * PI).sqrt())).abs(),
        (disequilibrium_closed_form(&unit(1))? - 3.0 / (4.0 * (2.0 * PI).sqrt())).abs(),
    ];
    out.push(Check::required("disequilibrium_hand_values", max_of(hand), 1e-9));

    let grid: Vec<f64> = (0..=50).map(|i| i as f64 * 0.1).collect();
    let mut entropy_spread = Vec::new();
    let mut ground_entropy = Vec::new();
    let mut constancy = Vec::new();
    let mut ground_c = Vec::new();
    let mut lmc: f64 = f64::INFINITY;
    for n in 0..=2 {
        let mut cs = Vec::new();
        for sigma0 in [0.5, 2.0, 3.0] {
            let (p, m) = fig(sigma0)?;
            let sets = measures_over_time(&p, &m, n, &grid)?;
            let mut shifted = Vec::new();
            for (set, &t) in sets.iter().zip(&grid) {
                let rho = rho_analytic(&p, t)?.rho;
                shifted.push(set.entropy_s - rho.ln());
                cs.push(set.complexity_c);
                lmc = lmc.min(set.complexity_c);
                if n == 0 {
                    ground_entropy.push((set.entropy_s - rho.ln() - (0.5 + (PI * p.hbar).sqrt().ln())).abs());
                    ground_c.push(set.complexity_c);
                }
            }
            entropy_spread.push(spread(&shifted));
        }
        constancy.push(spread(&cs));
    }
    out.push(Check::required("entropy_scaling_identity", max_of(entropy_spread), 1e-9));
    out.push(Check::required("entropy_ground_state_value", max_of(ground_entropy), 1e-9));
    out.push(Check::required("complexity_constancy", max_of(constancy), 1e-7));
    let target = (E / 2.0).sqrt();
    out.push(Check::required(
        "complexity_ground_state_sqrt_e_over_2",
        max_of(ground_c.iter().map(|c| (c - target).abs())),
        1e-7,
    ));
    out.push(Check::info("complexity_ground_state_measured", ground_c[0], target));
    out.push(Check::info("complexity_lmc_bound_margin", 1.0 - lmc, 1e-9));

    let s = snapshot(2.0, 0, 1.0)?;
    out.push(Check::required(
        "entropy_closed_form_ground_state",
        (entropy_closed_form(&s)? - entropy_quadrature(&s)?).abs(),
        1e-9,
    ));
    for n in 1..=3 {
        let s = snapshot(2.0, n, 1.0)?;
        let gap = (entropy_closed_form(&s)? - entropy_quadrature(&s)?).abs();
        out.push(Check::info(&format!("entropy_closed_form_n{n}"), gap, 1e-6));
    }
    Ok(out)
}

fn count_violations(conditions: impl IntoIterator<Item = bool>) -> f64 {
    conditions.into_iter().filter(|ok| !ok).count() as f64
}

fn trend_checks() -> Result<Vec<Check>> {
    let measures = |sigma0: f64, t: f64| -> Result<(f64, f64)> {
        let (p, m) = fig(sigma0)?;
        let set = measures_over_time(&p, &m, 0, &[t])?[0];
        Ok((set.h, set.disequilibrium_d))
    };
    let mut fig1 = Vec::new();
    let mut rates = Vec::new();
    for sigma0 in [2.0, 2.5, 3.0] {
        let samples: Vec<(f64, f64)> =
            (0..=6).map(|i| measures(sigma0, 0.5 + 0.25 * i as f64)).collect::<Result<_>>()?;
        for w in samples.windows(2) {
            fig1.push(w[1].0 < w[0].0 && w[1].1 > w[0].1);
        }
        let (lo, hi) = (measures(sigma0, 1.45)?, measures(sigma0, 1.55)?);
        rates.push((hi.1 - lo.1, lo.0 - hi.0));
    }
    fig1.push(rates[0].0 < rates[1].0 && rates[1].0 < rates[2].0);
    fig1.push(rates[0].1 < rates[1].1 && rates[1].1 < rates[2].1);

    let peak = |sigma0: f64, t: f64| snapshot(sigma0, 0, t).map(|s| density(&s, 0.0));
    let fig2 = [peak(3.0, 0.5)? > peak(0.5, 0.5)?];
    let fig3 = [peak(1.5, 0.0)? < peak(1.5, 0.5)?, peak(1.5, 0.5)? < peak(1.5, 1.0)?];

    let energy = |sigma0: f64, t: f64| snapshot(sigma0, 0, t).map(|s| energy_mean(&s) / s.level());
    let mut fig4 = Vec::new();
    for sigma0 in [0.4, 0.6, 0.8] {
        // slow power-law decay: follow it to t = 48, the edge of the Bessel range
        let times = (0..=10).map(|i| 0.5 * i as f64).chain((1..=8).map(|i| 6.0 * i as f64));
        let curve: Vec<f64> = times.map(|t| energy(sigma0, t)).collect::<Result<_>>()?;
        fig4.extend(curve.windows(2).map(|w| w[1] < w[0]));
        fig4.push(curve[curve.len() - 1] < 0.3 * curve[0]);
    }
    fig4.push(energy(0.8, 3.0)? < energy(0.6, 3.0)? && energy(0.6, 3.0)? < energy(0.4, 3.0)?);

    Ok(vec![
        Check::required("fig1_entropy_power_and_disequilibrium", count_violations(fig1), 0.0),
        Check::required("fig2_localization_by_conductivity", count_violations(fig2), 0.0),
        Check::required("fig3_localization_in_time", count_violations(fig3), 0.0),
        Check::required("fig4_energy_decay", count_violations(fig4), 0.0),
    ])
}

//! Bessel functions J_ν and Y_ν of real order ν ≥ 0 and positive real argument.
//!
//! Evaluation strategy on the supported envelope (0 ≤ ν ≤ 10, 0 < x ≤ 50):
//!
//! * x ≤ max([`SERIES_LIMIT`], ν): ascending power series for J_ν. Y_ν uses
//!   `(J_ν cos νπ − J_{−ν}) / sin νπ` for non-integer order and the
//!   logarithmic integer-order series when ν is an integer.
//! * otherwise, or ν within [`NEAR_INTEGER_BAND`] of an integer:
//!   Schläfli-type integral representations evaluated with Gauss–Legendre.
//!
//! The alternating series loses about `I_ν(x)/|J_ν(x)|` in relative accuracy,
//! already ~1e-14 at x = 6. The integral route stays near 1e-16, which the
//! second finite differences of ρ(t) need.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::special::gamma::{digamma_int, factorial, rgamma};
use crate::special::quadrature::{gauss_legendre, QuadratureRule};
use crate::special::summation::KahanSum;

pub const MAX_ORDER: f64 = 10.0;
pub const MAX_ARGUMENT: f64 = 50.0;
pub const SERIES_LIMIT: f64 = 2.0;
const NEAR_INTEGER_BAND: f64 = 1e-4;
const MAX_SERIES_TERMS: usize = 500;

/// J_ν, Y_ν and their x-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPair {
    pub j: f64,
    pub y: f64,
    pub dj: f64,
    pub dy: f64,
}

fn check_envelope(function: &'static str, order: f64, x: f64) -> Result<()> {
    if !(0.0..=MAX_ORDER).contains(&order) {
        return Err(Error::domain(function, format!("order {order} not in [0, {MAX_ORDER}]")));
    }
    if !(x > 0.0 && x <= MAX_ARGUMENT) {
        return Err(Error::domain(function, format!("x = {x} not in (0, {MAX_ARGUMENT}]")));
    }
    Ok(())
}

/// Bessel function of the first kind J_order(x).
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    check_envelope("bessel_j", order, x)?;
    Ok(j_nu(order, x))
}

/// Bessel function of the second kind Y_order(x).
pub fn bessel_y(order: f64, x: f64) -> Result<f64> {
    check_envelope("bessel_y", order, x)?;
    Ok(y_nu(order, x))
}

/// J_ν, Y_ν and derivatives from `Z_ν′ = (ν/x) Z_ν − Z_{ν+1}`.
pub fn bessel_pair(order: f64, x: f64) -> Result<BesselPair> {
    check_envelope("bessel_pair", order, x)?;
    let j = j_nu(order, x);
    let y = y_nu(order, x);
    let dj = order / x * j - j_nu(order + 1.0, x);
    let dy = order / x * y - y_nu(order + 1.0, x);
    Ok(BesselPair { j, y, dj, dy })
}

fn use_series(nu: f64, x: f64) -> bool {
    x <= SERIES_LIMIT.max(nu)
}

fn nearest_integer_gap(nu: f64) -> f64 {
    (nu - nu.round()).abs()
}

fn sin_pi(nu: f64) -> f64 {
    let r = nu - 2.0 * (nu / 2.0).round();
    if r == r.round() {
        0.0
    } else {
        (PI * r).sin()
    }
}

fn cos_pi(nu: f64) -> f64 {
    let r = nu - 2.0 * (nu / 2.0).round();
    if (2.0 * r) == (2.0 * r).round() && r != r.round() {
        0.0
    } else {
        (PI * r).cos()
    }
}

/// J_ν(x) for any real ν (negative allowed) and x > 0.
pub(crate) fn j_nu(nu: f64, x: f64) -> f64 {
    if nu < 0.0 && nu == nu.floor() {
        let n = -nu;
        let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return sign * j_nu(n, x);
    }
    if nu >= 0.0 && !use_series(nu, x) {
        return j_integral(nu, x);
    }
    j_series(nu, x)
}

fn j_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = half.powf(nu) * rgamma(nu + 1.0);
    let q = -half * half;
    let mut acc = KahanSum::new();
    acc.add(term);
    for m in 0..MAX_SERIES_TERMS {
        let mf = m as f64;
        term *= q / ((mf + 1.0) * (mf + nu + 1.0));
        acc.add(term);
        if mf > half && term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Y_ν(x) for ν ≥ 0, x > 0.
pub(crate) fn y_nu(nu: f64, x: f64) -> f64 {
    if !use_series(nu, x) {
        return y_integral(nu, x);
    }
    if nu == nu.floor() {
        return y_integer_series(nu as u32, x);
    }
    if nearest_integer_gap(nu) < NEAR_INTEGER_BAND {
        return y_integral(nu, x);
    }
    (j_series(nu, x) * cos_pi(nu) - j_series(-nu, x)) / sin_pi(nu)
}

fn y_integer_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let quarter_sq = half * half;

    let mut finite = KahanSum::new();
    for k in 0..n {
        finite.add(factorial(n - k - 1) / factorial(k) * quarter_sq.powi(k as i32));
    }
    let finite_part = -finite.value() * half.powi(-(n as i32)) / PI;

    let log_part = 2.0 / PI * half.ln() * j_series(n as f64, x);

    let mut base = 1.0 / factorial(n);
    let mut psi_k = digamma_int(1);
    let mut psi_nk = digamma_int(n + 1);
    let mut acc = KahanSum::new();
    acc.add(base * (psi_k + psi_nk));
    for k in 1..MAX_SERIES_TERMS as u32 {
        base *= -quarter_sq / (k as f64 * (n + k) as f64);
        psi_k += 1.0 / k as f64;
        psi_nk += 1.0 / (n + k) as f64;
        let term = base * (psi_k + psi_nk);
        acc.add(term);
        if k as f64 > half && term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    let series_part = -half.powi(n as i32) / PI * acc.value();

    finite_part + log_part + series_part
}

fn unit_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(256, 0.0, 1.0).expect("valid rule"))
}

fn integrate_on<F: FnMut(f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    unit_rule().remap(a, b).integrate(f)
}

/// Upper cut-off for ∫₀^∞ e^{g(t)} dt with g(t) = s·t − x·sinh t, split at the peak.
fn exponential_tail_integral(s: f64, x: f64) -> f64 {
    let g = |t: f64| s * t - x * t.sinh();
    let peak = if s > x { (s / x).acosh() } else { 0.0 };
    let g_peak = g(peak);
    let mut end = peak + 0.25;
    while g(end) > g_peak - 60.0 {
        end += 0.25;
    }
    let f = |t: f64| (g(t) - g_peak).exp();
    let body = if peak > 0.0 {
        integrate_on(0.0, peak, f) + integrate_on(peak, end, f)
    } else {
        integrate_on(0.0, end, f)
    };
    body * g_peak.exp()
}

fn j_integral(nu: f64, x: f64) -> f64 {
    let oscillatory = integrate_on(0.0, PI, |th| (nu * th - x * th.sin()).cos()) / PI;
    let s = sin_pi(nu);
    if s == 0.0 {
        return oscillatory;
    }
    oscillatory - s / PI * exponential_tail_integral(-nu, x)
}

fn y_integral(nu: f64, x: f64) -> f64 {
    let oscillatory = integrate_on(0.0, PI, |th| (x * th.sin() - nu * th).sin()) / PI;
    let growing = exponential_tail_integral(nu, x);
    let decaying = exponential_tail_integral(-nu, x);
    oscillatory - (growing + cos_pi(nu) * decaying) / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn j_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.sin()
    }
    fn y_half(x: f64) -> f64 {
        -(2.0 / (PI * x)).sqrt() * x.cos()
    }
    fn j_three_halves(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())
    }
    fn y_three_halves(x: f64) -> f64 {
        -(2.0 / (PI * x)).sqrt() * (x.cos() / x + x.sin())
    }

    #[test]
    fn half_order_closed_forms() {
        let v = bessel_j(0.5, PI / 2.0).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-15);
        for x in [0.1, 0.7, 1.0, 2.0, 5.0, 11.0] {
            // compare against the envelope √(2/πx); Y_{1/2} nearly vanishes at x = 11
            let amp = (2.0 / (PI * x)).sqrt();
            assert!((bessel_j(0.5, x).unwrap() - j_half(x)).abs() < 1e-12 * amp, "J x={x}");
            assert!((bessel_y(0.5, x).unwrap() - y_half(x)).abs() < 1e-12 * amp, "Y x={x}");
        }
    }

    #[test]
    fn three_halves_closed_forms() {
        assert!(rel(bessel_j(1.5, 2.0).unwrap(), j_three_halves(2.0)) < 1e-12);
        assert!(rel(bessel_y(1.5, 2.0).unwrap(), y_three_halves(2.0)) < 1e-9);
    }

    #[test]
    fn j0_near_origin() {
        assert!((bessel_j(0.0, 1e-8).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn integer_orders_match_tabulated_values() {
        // Abramowitz & Stegun Table 9.1
        assert!(rel(bessel_j(0.0, 1.0).unwrap(), 0.765_197_686_557_966_6) < 1e-14);
        assert!(rel(bessel_j(1.0, 1.0).unwrap(), 0.440_050_585_744_933_5) < 1e-14);
        assert!(rel(bessel_y(0.0, 1.0).unwrap(), 0.088_256_964_215_676_96) < 1e-12);
        assert!(rel(bessel_y(1.0, 1.0).unwrap(), -0.781_212_821_300_288_7) < 1e-12);
        assert!(rel(bessel_y(2.0, 2.0).unwrap(), -0.617_408_104_190_682_1) < 1e-12);
    }

    #[test]
    fn series_and_integral_agree_at_crossover() {
        for nu in [0.0, 0.5, 1.0, 2.3, 7.0, 10.0] {
            let x = 12.0;
            assert!((j_series(nu, x) - j_integral(nu, x)).abs() < 1e-12, "J nu={nu}");
            let ys = if nu == nu.floor() {
                y_integer_series(nu as u32, x)
            } else {
                (j_series(nu, x) * cos_pi(nu) - j_series(-nu, x)) / sin_pi(nu)
            };
            assert!((ys - y_integral(nu, x)).abs() < 1e-11, "Y nu={nu}");
        }
    }

    #[test]
    fn large_argument_half_order() {
        for x in [13.0, 25.0, 37.5, 50.0] {
            assert!((bessel_j(0.5, x).unwrap() - j_half(x)).abs() < 1e-14);
            assert!((bessel_y(0.5, x).unwrap() - y_half(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn near_integer_order_is_continuous() {
        for x in [0.5, 3.0, 9.0] {
            let at = bessel_y(2.0, x).unwrap();
            let close = bessel_y(2.0 + 1e-7, x).unwrap();
            let off = bessel_y(2.0 + 2e-4, x).unwrap();
            assert!(rel(close, at) < 1e-6, "x={x}");
            assert!(rel(off, at) < 1e-2, "x={x}");
        }
    }

    #[test]
    fn wronskian_at_three_halves() {
        let p = bessel_pair(1.5, 2.0).unwrap();
        let w = p.j * p.dy - p.dj * p.y;
        assert!(rel(w, 2.0 / (PI * 2.0)) < 1e-12);
    }

    #[test]
    fn envelope_violations() {
        assert!(bessel_j(10.5, 1.0).is_err());
        assert!(bessel_j(-0.5, 1.0).is_err());
        assert!(bessel_y(1.0, 0.0).is_err());
        assert!(bessel_y(1.0, 50.5).is_err());
    }
}


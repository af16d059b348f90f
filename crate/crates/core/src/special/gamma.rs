use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("gamma_fn", format!("x = {x} must be positive")));
    }
    Ok(gamma(x))
}

/// Γ(x) on the whole real line; poles return ±∞.
pub(crate) fn gamma(x: f64) -> f64 {
    if x == x.floor() {
        if x <= 0.0 {
            return f64::INFINITY;
        }
        if x <= 171.0 {
            return factorial(x as u32 - 1);
        }
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power so large arguments do not overflow before the exp
    let half = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (-t).exp() * half * acc
}

/// 1/Γ(x), zero at the poles.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    1.0 / gamma(x)
}

/// n! as f64, exact up to 22! and correctly rounded beyond.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Digamma at positive integers: ψ(m) = −γ + H_{m−1}.
pub(crate) fn digamma_int(m: u32) -> f64 {
    debug_assert!(m >= 1);
    (1..m).fold(-EULER_GAMMA, |acc, k| acc + 1.0 / k as f64)
}

/// Binomial coefficient C(n, k) in floating point.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_and_half() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-15);
    }

    #[test]
    fn four_and_a_half_by_recurrence() {
        // Γ(4.5) = 3.5·2.5·1.5·0.5·Γ(0.5)
        let expected = 3.5 * 2.5 * 1.5 * 0.5 * PI.sqrt();
        assert!(rel(gamma_fn(4.5).unwrap(), expected) < 1e-14);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(gamma_fn(0.0), Err(Error::Domain { .. })));
        assert!(gamma_fn(-1.5).is_err());
        assert!(gamma_fn(f64::NAN).is_err());
    }

    #[test]
    fn recurrence_on_grid() {
        let mut x = 0.5;
        while x <= 20.0 {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}");
            x += 0.137;
        }
    }

    #[test]
    fn reflection_for_negative_non_integers() {
        // Γ(−1/2) = −2√π
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-14);
        assert_eq!(rgamma(-3.0), 0.0);
    }

    #[test]
    fn large_argument_matches_factorial() {
        assert!(rel(gamma(30.0), factorial(29)) < 1e-15);
        assert!(rel(gamma(29.5) * 29.5, gamma(30.5)) < 1e-13);
    }

    #[test]
    fn digamma_and_binomial() {
        assert!((digamma_int(1) + EULER_GAMMA).abs() < 1e-16);
        assert!((digamma_int(3) - (1.5 - EULER_GAMMA)).abs() < 1e-15);
        assert_eq!(binomial(6, 2), 15.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}

//! The two fixed-parameter confluent hypergeometric functions that enter the
//! closed-form position entropy of Hermite states:
//! ₁F₁(1; 1/2; z) and ₂F₂(1, 1; 3/2, 2; z) for z = −x² ≤ 0.

use crate::error::{Error, Result};
use crate::special::summation::{DoubleDouble, KahanSum};

/// Most negative argument accepted (z = −x² with |x| ≤ 6).
pub const MIN_ARGUMENT: f64 = -36.0;
const DAWSON_SERIES_LIMIT: f64 = 6.5;
const MAX_TERMS: usize = 500;

/// Dawson's integral F(x) = e^{−x²} ∫₀^x e^{t²} dt.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= DAWSON_SERIES_LIMIT {
        dawson_series(ax)
    } else {
        dawson_asymptotic(ax)
    };
    v.copysign(x)
}

/// e^{−x²} Σ_k x^{2k+1} / (k! (2k+1)); every term is positive, so the
/// sum is accurate to a few ulps before the final scaling.
fn dawson_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut power = x;
    let mut acc = KahanSum::new();
    for k in 0..MAX_TERMS {
        let term = power / (2 * k + 1) as f64;
        acc.add(term);
        if k as f64 > x2 && term < 1e-17 * acc.value() {
            break;
        }
        power *= x2 / (k + 1) as f64;
    }
    (-x2).exp() * acc.value()
}

/// F(x) ~ (1/2x) Σ_k (2k−1)!! / (2x²)^k, truncated at the smallest term.
fn dawson_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut acc = KahanSum::new();
    acc.add(term);
    for k in 1..MAX_TERMS {
        let next = term * (2 * k - 1) as f64 * inv;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        acc.add(term);
        if term < 1e-17 * acc.value() {
            break;
        }
    }
    acc.value() / (2.0 * x)
}

fn check_argument(function: &'static str, z: f64) -> Result<()> {
    if !(z <= 0.0) {
        return Err(Error::domain(function, format!("z = {z} must be <= 0")));
    }
    if z < MIN_ARGUMENT {
        return Err(Error::domain(function, format!("z = {z} below {MIN_ARGUMENT}")));
    }
    Ok(())
}

/// ₁F₁(1; 1/2; z) = 1 − 2x·F(x) with x = √(−z).
pub fn hyp1f1_special(z: f64) -> Result<f64> {
    check_argument("hyp1f1_special", z)?;
    let x = (-z).sqrt();
    Ok(1.0 - 2.0 * x * dawson(x))
}

/// ₂F₂(1, 1; 3/2, 2; z) by its term recurrence, accumulated in double-double.
pub fn hyp2f2_special(z: f64) -> Result<f64> {
    check_argument("hyp2f2_special", z)?;
    let mut term = DoubleDouble::from_f64(1.0);
    let mut sum = term;
    for m in 0..MAX_TERMS {
        let mf = m as f64;
        term = term
            .mul_f64(z)
            .mul_f64(mf + 1.0)
            .div_f64((mf + 1.5) * (mf + 2.0));
        sum = sum.add(term);
        if term.abs_hi() < 1e-18 * sum.abs_hi() {
            return Ok(sum.to_f64());
        }
    }
    Err(Error::Convergence {
        function: "hyp2f2_special",
        terms: MAX_TERMS,
    })
}

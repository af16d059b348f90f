use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_HERMITE_ORDER: u32 = 12;

/// Physicists' Hermite polynomial H_n with its integer coefficients and zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable {
    n: u32,
    /// `coefficients[k]` multiplies x^k.
    coefficients: Vec<i64>,
    roots: Vec<f64>,
}

impl HermiteTable {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Zeros sorted ascending.
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn eval(&self, x: f64) -> f64 {
        hermite_eval(self.n, x)
    }
}

/// Builds H_n for 0 ≤ n ≤ 12.
pub fn hermite(n: u32) -> Result<HermiteTable> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::domain(
            "hermite",
            format!("order {n} exceeds {MAX_HERMITE_ORDER}"),
        ));
    }
    Ok(HermiteTable {
        n,
        coefficients: hermite_coefficients(n),
        roots: hermite_roots(n),
    })
}

fn hermite_coefficients(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut prev = vec![1i64];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0i64, 2];
    for k in 1..n {
        // H_{k+1} = 2x H_k − 2k H_{k−1}
        let mut next = vec![0i64; k + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= 2 * k as i64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// H_n(x) by the three-term recurrence.
pub fn hermite_eval(n: u32, x: f64) -> f64 {
    hermite_eval_pair(n, x).0
}

/// (H_n(x), H_{n−1}(x)); the second entry is 0 for n = 0.
fn hermite_eval_pair(n: u32, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Orthonormal Hermite function H_n(x) e^{−x²/2} / √(2ⁿ n! √π).
pub fn hermite_function(n: u32, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn hermite_roots(n: u32) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    // Jacobi matrix of the recurrence: zero diagonal, off-diagonal √(k/2)
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut roots = symmetric_tridiagonal_eigenvalues(vec![0.0; n as usize], off);
    for r in roots.iter_mut() {
        let (h, h_prev) = hermite_eval_pair(n, *r);
        let dh = 2.0 * n as f64 * h_prev;
        if dh != 0.0 {
            *r -= h / dh;
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    let len = roots.len();
    for k in 0..len / 2 {
        let mag = 0.5 * (roots[len - 1 - k] - roots[k]);
        roots[k] = -mag;
        roots[len - 1 - k] = mag;
    }
    if len % 2 == 1 {
        roots[len / 2] = 0.0;
    }
    roots
}

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL method.
fn symmetric_tridiagonal_eigenvalues(mut diag: Vec<f64>, off: Vec<f64>) -> Vec<f64> {
    let n = diag.len();
    let mut e = off;
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_has_no_roots() {
        let h = hermite(0).unwrap();
        assert_eq!(h.coefficients(), &[1]);
        assert!(h.roots().is_empty());
    }

    #[test]
    fn order_two() {
        let h = hermite(2).unwrap();
        assert_eq!(h.coefficients(), &[-2, 0, 4]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h.roots()[0] + r).abs() < 1e-15);
        assert!((h.roots()[1] - r).abs() < 1e-15);
    }

    #[test]
    fn order_three() {
        let h = hermite(3).unwrap();
        assert_eq!(h.coefficients(), &[0, -12, 0, 8]);
        let r = 1.5f64.sqrt();
        assert!((h.roots()[0] + r).abs() < 1e-14);
        assert_eq!(h.roots()[1], 0.0);
        assert!((h.roots()[2] - r).abs() < 1e-14);
    }

    #[test]
    fn roots_vanish_and_are_symmetric() {
        for n in 1..=MAX_HERMITE_ORDER {
            let h = hermite(n).unwrap();
            assert_eq!(h.roots().len(), n as usize);
            let scale = 2f64.powi(n as i32) * h.roots().last().unwrap().abs().max(1.0).powi(n as i32);
            for (k, &x) in h.roots().iter().enumerate() {
                assert!(h.eval(x).abs() / scale < 1e-9, "n={n} x={x}");
                let mirror = h.roots()[n as usize - 1 - k];
                assert!((x + mirror).abs() < 1e-12);
            }
            assert!(h.roots().windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn coefficients_agree_with_recurrence() {
        for n in 0..=MAX_HERMITE_ORDER {
            let h = hermite(n).unwrap();
            for x in [-1.3f64, 0.2, 0.9, 2.5] {
                let poly: f64 = h
                    .coefficients()
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c as f64 * x.powi(k as i32))
                    .sum();
                let v = h.eval(x);
                assert!((poly - v).abs() <= 1e-12 * v.abs().max(1.0), "n={n}");
            }
        }
    }

    #[test]
    fn hermite_function_normalization_constant() {
        let x: f64 = 0.7;
        for n in 0..=8u32 {
            let norm = (2f64.powi(n as i32) * crate::special::gamma::factorial(n) * PI.sqrt()).sqrt();
            let expected = hermite_eval(n, x) * (-x * x / 2.0).exp() / norm;
            assert!((hermite_function(n, x) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_high_order() {
        assert!(hermite(13).is_err());
    }
}

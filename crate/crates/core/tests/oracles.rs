//! Independent references for the special functions: exact rational series,
//! set-partition enumeration and high-precision tabulated Bessel values.

#![allow(clippy::excessive_precision)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use tdq::special::{bell_partial, bessel_j, bessel_y, hyp1f1_special, hyp2f2_special};

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Sums `term(k)` exactly until the terms drop below 1e-40 after their peak.
fn exact_series(z: i64, term_ratio: impl Fn(u64, &BigRational) -> BigRational) -> f64 {
    let cutoff = BigRational::new(BigInt::one(), BigInt::from(10).pow(40));
    let z = rational(z);
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        sum += &term;
        let next = term_ratio(k, &z) * &term;
        if next.abs() < cutoff && k > 200 {
            break;
        }
        term = next;
        k += 1;
        assert!(k < 2000, "series did not settle");
    }
    sum.to_f64().unwrap()
}

/// ₁F₁(1; ½; z) = Σ (2z)^k / (2k−1)!!.
fn exact_1f1(z: i64) -> f64 {
    exact_series(z, |k, z| z * rational(2) / rational(2 * k as i64 + 1))
}

/// ₂F₂(1, 1; 3/2, 2; z) = Σ (2z)^k / ((k+1)(2k+1)!!).
fn exact_2f2(z: i64) -> f64 {
    exact_series(z, |k, z| {
        let k = k as i64;
        z * rational(2) * rational(k + 1) / (rational(k + 2) * rational(2 * k + 3))
    })
}

#[test]
fn confluent_against_exact_series() {
    for z in [-1, -4, -9, -16, -25, -36] {
        let exact = exact_1f1(z);
        let got = hyp1f1_special(z as f64).unwrap();
        assert!((got - exact).abs() < 1e-13 * exact.abs().max(1e-3), "z = {z}: {got} vs {exact}");
    }
    assert!((hyp1f1_special(-4.0).unwrap() - exact_1f1(-4)).abs() < 1e-15);
}

#[test]
fn generalized_against_exact_series() {
    for z in [-1, -4, -9, -20, -36] {
        let exact = exact_2f2(z);
        let got = hyp2f2_special(z as f64).unwrap();
        assert!((got - exact).abs() < 1e-13 * exact.abs(), "z = {z}: {got} vs {exact}");
    }
    assert!((hyp2f2_special(-9.0).unwrap() - exact_2f2(-9)).abs() < 1e-14);
}

/// Every set partition of {0..m} into l blocks, weighted by Π a_{|block|}.
fn bell_by_set_partitions(m: usize, l: usize, a: &[f64]) -> f64 {
    fn walk(next: usize, m: usize, l: usize, sizes: &mut Vec<usize>, a: &[f64]) -> f64 {
        if next == m {
            return if sizes.len() == l {
                sizes.iter().map(|&s| a[s - 1]).product()
            } else {
                0.0
            };
        }
        let mut total = 0.0;
        for b in 0..sizes.len() {
            sizes[b] += 1;
            total += walk(next + 1, m, l, sizes, a);
            sizes[b] -= 1;
        }
        if sizes.len() < l {
            sizes.push(1);
            total += walk(next + 1, m, l, sizes, a);
            sizes.pop();
        }
        total
    }
    walk(0, m, l, &mut Vec::new(), a)
}

#[test]
fn bell_against_set_partitions() {
    let a = [1.1, -0.6, 2.3, 0.9, -1.7, 0.25, 3.0, -0.4];
    for m in 1..=8 {
        for l in 1..=m {
            let exact = bell_by_set_partitions(m, l, &a);
            let got = bell_partial(m, l, &a).unwrap();
            assert!((got - exact).abs() < 1e-12 * exact.abs().max(1.0), "B({m},{l}): {got} vs {exact}");
        }
    }
    // Stirling numbers of the second kind at a = 1
    let ones = [1.0; 8];
    assert_eq!(bell_partial(8, 3, &ones).unwrap(), 966.0);
    assert_eq!(bell_partial(7, 4, &ones).unwrap(), 350.0);
}

#[test]
fn bessel_against_tabulated_values() {
    // (ν, x, J_ν(x), Y_ν(x)) to 20 digits
    let table = [
        (0.0, 0.5, 0.93846980724081290423, -0.44451873350670655715),
        (0.75, 1.0, 0.55865249320489174775, -0.62186941744297463829),
        (1.25, 3.7, 0.18339384349367792014, 0.38265009579329779686),
        (2.0, 1.0, 0.11490348493190048047, -1.6506826068162543911),
        (2.0, 17.5, 0.084433830294313932929, 0.17167665521749300295),
        (3.5, 9.0, -0.26826695137926628099, -0.067254325571459766162),
        (5.3, 42.0, -0.028712260639013959047, 0.12022544895883554937),
        (7.9, 2.2, 0.000056850663867650952392, -738.55091504687315615),
        (10.0, 50.0, -0.11384784914946938567, 0.005723897182053513546),
        (1.00003, 6.0, -0.27669135181511397732, -0.17499874671561099671),
    ];
    for (nu, x, j, y) in table {
        let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
        let gj = bessel_j(nu, x).unwrap();
        let gy = bessel_y(nu, x).unwrap();
        assert!((gj - j).abs() < 1e-13 * j.abs().max(amp), "J_{nu}({x}) = {gj}, want {j}");
        assert!((gy - y).abs() < 1e-13 * y.abs().max(amp), "Y_{nu}({x}) = {gy}, want {y}");
    }
}

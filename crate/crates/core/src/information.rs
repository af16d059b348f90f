//! Shannon entropy, disequilibrium and LMC statistical complexity of the
//! charge density P_n(q, t).
//!
//! Quadrature is the reference route. The closed forms are kept alongside it
//! as independent cross-checks: the disequilibrium expansion in partial Bell
//! polynomials agrees with quadrature to rounding, while the printed entropy
//! series is only trusted at n = 0.

use serde::Serialize;

use crate::dynamics::{rho_analytic, ConductivityModel, SuperconductorParams};
use crate::error::{Error, Result};
use crate::observables::{integrate_density, QuantumSnapshot};
use crate::special::{
    bell_table, binomial, factorial, gamma_fn, hermite, hyp1f1_special, hyp2f2_special, KahanSum,
    EULER_GAMMA, MAX_HERMITE_ORDER,
};

/// Largest tolerated |∫P dq − 1| before a quadrature result is refused.
pub const NORMALIZATION_LIMIT: f64 = 1e-6;

/// Densities below this contribute nothing to −P ln P.
const DENSITY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

/// Entropy, entropy power, disequilibrium and complexity at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSet {
    pub n: u32,
    pub t: f64,
    /// Shannon entropy in nats.
    pub entropy_s: f64,
    /// Entropy power e^S.
    pub h: f64,
    pub disequilibrium_d: f64,
    /// C = H·D.
    pub complexity_c: f64,
    pub method: Method,
}

impl MeasureSet {
    fn new(snap: &QuantumSnapshot, entropy_s: f64, disequilibrium_d: f64, method: Method) -> Self {
        let h = entropy_s.exp();
        Self {
            n: snap.n,
            t: snap.t,
            entropy_s,
            h,
            disequilibrium_d,
            complexity_c: h * disequilibrium_d,
            method,
        }
    }
}

/// Both evaluations of the complexity at one snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complexity {
    pub quadrature: MeasureSet,
    pub closed_form: MeasureSet,
}

impl Complexity {
    /// C from the quadrature pair.
    pub fn value(&self) -> f64 {
        self.quadrature.complexity_c
    }
}

/// Coefficients c_l of the polynomial part of the normalized Hermite function,
/// `c[l]` multiplying x^l, zero-padded to length 2n + 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientVector {
    pub n: u32,
    pub c: Vec<f64>,
}

impl CoefficientVector {
    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

fn check_level(function: &'static str, n: u32) -> Result<()> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::domain(function, format!("level {n} exceeds {MAX_HERMITE_ORDER}")));
    }
    Ok(())
}

/// c_l = (−1)^{(3n−l)/2} n! 2^{l−1} [(−1)^l + (−1)^n] / (l! ((n−l)/2)! √(2ⁿ n! √π))
/// for 0 ≤ l ≤ n. The sign convention makes Σ c_l x^l = (−1)ⁿ H_n(x)/√(2ⁿn!√π).
pub fn coefficients(n: u32) -> Result<CoefficientVector> {
    check_level("coefficients", n)?;
    let norm = (2f64.powi(n as i32) * factorial(n) * std::f64::consts::PI.sqrt()).sqrt();
    let mut c = vec![0.0; 2 * n as usize + 1];
    for l in (n % 2..=n).step_by(2) {
        let half = (n - l) / 2;
        let sign = if ((3 * n - l) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        // [(−1)^l + (−1)^n] = 2 for matching parity, which turns 2^{l−1} into 2^l
        c[l as usize] = sign * factorial(n) * 2f64.powi(l as i32) / (factorial(l) * factorial(half) * norm);
    }
    Ok(CoefficientVector { n, c })
}

fn normalization_guard(snap: &QuantumSnapshot) -> Result<()> {
    let norm = integrate_density(snap, |_, p| p)?;
    let deviation = (norm - 1.0).abs();
    if !(deviation <= NORMALIZATION_LIMIT) {
        return Err(Error::Normalization {
            deviation,
            limit: NORMALIZATION_LIMIT,
        });
    }
    Ok(())
}

/// S = −∫ P ln P dq.
pub fn entropy_quadrature(snap: &QuantumSnapshot) -> Result<f64> {
    check_level("entropy_quadrature", snap.n)?;
    normalization_guard(snap)?;
    integrate_density(snap, |_, p| if p < DENSITY_FLOOR { 0.0 } else { -p * p.ln() })
}

/// Series form of the entropy over the zeros x_k of H_n, evaluated term by
/// term exactly as written:
///
/// ```text
/// nγ + n + ½ + ln(√(ħπ) n! 2ⁿ ρ) − 2 Σ_k x_k² ₂F₂(1,1;3/2,2;−x_k²)
///     + Σ_k Σ_i C(n,i) (−2)^i / i · ₁F₁(1;½;−x_k²)
/// ```
pub fn entropy_closed_form(snap: &QuantumSnapshot) -> Result<f64> {
    let n = snap.n;
    check_level("entropy_closed_form", n)?;
    let nf = n as f64;
    let scale = (snap.hbar * std::f64::consts::PI).sqrt() * factorial(n) * 2f64.powi(n as i32) * snap.rho;
    let mut acc = KahanSum::new();
    acc.add(nf * EULER_GAMMA + nf + 0.5 + scale.ln());

    let inner: f64 = (1..=n)
        .map(|i| binomial(n, i) * (-2f64).powi(i as i32) / i as f64)
        .sum();
    for &x in hermite(n)?.roots() {
        let z = -x * x;
        acc.add(2.0 * z * hyp2f2_special(z)?);
        acc.add(inner * hyp1f1_special(z)?);
    }
    Ok(acc.value())
}

/// D = ∫ P² dq.
pub fn disequilibrium_quadrature(snap: &QuantumSnapshot) -> Result<f64> {
    check_level("disequilibrium_quadrature", snap.n)?;
    normalization_guard(snap)?;
    integrate_density(snap, |_, p| p * p)
}

/// D = (1/(ρ√ħ)) Σ_{j=0}^{2n} Γ(j+½)/2^{j+½} · 4!/(2j+4)! · B_{2j+4,4}(a_1, a_2, …)
/// with a_i = i!·c_{i−1}, so that the Bell sum expands (x Σ c_l x^l)⁴.
pub fn disequilibrium_closed_form(snap: &QuantumSnapshot) -> Result<f64> {
    let n = snap.n as usize;
    let coeffs = coefficients(snap.n)?;
    let top = 4 * n + 4;
    let a: Vec<f64> = (1..=top - 3)
        .map(|i| factorial(i as u32) * coeffs.c.get(i - 1).copied().unwrap_or(0.0))
        .collect();
    let table = bell_table(top, 4, &a);
    let mut acc = KahanSum::new();
    for j in 0..=2 * n {
        let m = 2 * j + 4;
        let jf = j as f64;
        let moment = gamma_fn(jf + 0.5)? / 2f64.powf(jf + 0.5);
        acc.add(moment * factorial(4) / factorial(m as u32) * table[m][4]);
    }
    Ok(acc.value() / snap.width())
}

/// e^S · D from quadrature, with the closed-form pair alongside.
pub fn complexity(snap: &QuantumSnapshot) -> Result<Complexity> {
    Ok(Complexity {
        quadrature: measure_set(snap, Method::Quadrature)?,
        closed_form: measure_set(snap, Method::ClosedForm)?,
    })
}

pub fn measure_set(snap: &QuantumSnapshot, method: Method) -> Result<MeasureSet> {
    let (s, d) = match method {
        Method::Quadrature => (entropy_quadrature(snap)?, disequilibrium_quadrature(snap)?),
        Method::ClosedForm => (entropy_closed_form(snap)?, disequilibrium_closed_form(snap)?),
    };
    Ok(MeasureSet::new(snap, s, d, method))
}

/// Quadrature measures along the exact hyperbolic solution.
pub fn measures_over_time(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    n: u32,
    t_grid: &[f64],
) -> Result<Vec<MeasureSet>> {
    if *model != ConductivityModel::hyperbolic(params) {
        return Err(Error::InvalidParameter(
            "measures_over_time needs the hyperbolic model built from the same parameters".into(),
        ));
    }
    t_grid
        .iter()
        .map(|&t| {
            let snap = QuantumSnapshot::assemble(params, model, n, &rho_analytic(params, t)?)?;
            measure_set(&snap, Method::Quadrature)
        })
        .collect()
}

//! Exact wavefunctions and the expectation values built from them.
//!
//! Every quantity here is a closed-form function of a [`QuantumSnapshot`]:
//! the level n and the instantaneous (ρ, ρ̇, L, ω²) at one time. The charge
//! density of level n is
//!
//! ```text
//! P_n(q, t) = e^{−x²} H_n(x)² / (√π ħ^{1/2} n! 2ⁿ ρ),   x = q / (√ħ ρ)
//! ```
//!
//! so it depends on time and conductivity only through ρ(t).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{
    default_seed, omega_sq, rho_analytic, ConductivityModel, Dopri5, NumericPinney, PinneyState,
    PinneyTrajectory, SuperconductorParams,
};
use crate::error::{Error, Result};
use crate::special::{adaptive_simpson, gauss_legendre, hermite, hermite_function, MAX_HERMITE_ORDER};

const PHASE_TOL: f64 = 1e-10;

/// Extra scaled half-width added beyond the outermost classical turning point.
const TRUNCATION_MARGIN: f64 = 8.0;

/// Minimum Gauss–Legendre nodes per panel of the charge rule.
const MIN_PANEL_POINTS: usize = 128;
/// Minimum total nodes of the charge rule.
const MIN_TOTAL_POINTS: usize = 400;

/// Level n together with the Pinney data at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumSnapshot {
    pub n: u32,
    pub t: f64,
    pub rho: f64,
    pub rho_dot: f64,
    pub l: f64,
    pub omega_sq: f64,
    pub hbar: f64,
    /// θ_n(t); only the complex wavefunction looks at it.
    pub phase: f64,
}

impl QuantumSnapshot {
    /// Builds a snapshot at `state.t` with θ_n = 0. Attach a phase with
    /// [`QuantumSnapshot::with_phase`] when the complex wavefunction is needed.
    pub fn assemble(
        params: &SuperconductorParams,
        model: &ConductivityModel,
        n: u32,
        state: &PinneyState,
    ) -> Result<Self> {
        if n > MAX_HERMITE_ORDER {
            return Err(Error::domain(
                "QuantumSnapshot",
                format!("level {n} exceeds {MAX_HERMITE_ORDER}"),
            ));
        }
        if !(state.rho > 0.0 && state.rho.is_finite()) {
            return Err(Error::domain(
                "QuantumSnapshot",
                format!("rho = {} at t = {} is not positive", state.rho, state.t),
            ));
        }
        Ok(Self {
            n,
            t: state.t,
            rho: state.rho,
            rho_dot: state.rho_dot,
            l: model.l_factor(params.eps0, state.t),
            omega_sq: omega_sq(params, model, state.t),
            hbar: params.hbar,
            phase: 0.0,
        })
    }

    /// Snapshot on the exact hyperbolic solution, phase included.
    pub fn hyperbolic(params: &SuperconductorParams, n: u32, t: f64) -> Result<Self> {
        let model = ConductivityModel::hyperbolic(params);
        let state = rho_analytic(params, t)?;
        let snap = Self::assemble(params, &model, n, &state)?;
        let traj = crate::dynamics::AnalyticPinney { params: *params };
        Ok(snap.with_phase(phase_along(&traj, &model, params.eps0, n, t)?))
    }

    pub fn with_phase(self, phase: f64) -> Self {
        Self { phase, ..self }
    }

    /// n + 1/2.
    pub fn level(&self) -> f64 {
        self.n as f64 + 0.5
    }

    /// Invariant eigenvalue λ_n = (n + 1/2)ħ.
    pub fn eigenvalue(&self) -> f64 {
        self.level() * self.hbar
    }

    /// Charge scale √ħ ρ that turns q into the Hermite variable.
    pub fn width(&self) -> f64 {
        self.hbar.sqrt() * self.rho
    }

    /// Half-width ρ√ħ (√(2n+1) + 8) beyond which P is negligible.
    pub fn truncation_radius(&self) -> f64 {
        self.width() * scaled_radius(self.n)
    }

    /// L²ρ²ρ̇², the squeezing term shared by ⟨Φ²⟩, ΔqΔΦ and the energy.
    fn squeeze(&self) -> f64 {
        let v = self.l * self.rho * self.rho_dot;
        v * v
    }
}

fn scaled_radius(n: u32) -> f64 {
    (2.0 * n as f64 + 1.0).sqrt() + TRUNCATION_MARGIN
}

/// θ_n(t) = −(n + 1/2) ∫₀ᵗ dt′ / (L ρ²), with ρ taken from the exact solution
/// when `model` is the hyperbolic profile of `params` and from a numeric
/// Pinney run (default seed) otherwise.
pub fn phase(params: &SuperconductorParams, model: &ConductivityModel, n: u32, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain("phase", format!("t = {t} must be non-negative")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    match model {
        ConductivityModel::Hyperbolic { sigma0, rate }
            if *sigma0 == params.sigma0 && *rate == params.rate =>
        {
            let traj = crate::dynamics::AnalyticPinney { params: *params };
            phase_along(&traj, model, params.eps0, n, t)
        }
        _ => {
            let (rho0, rho_dot0) = default_seed(params, model)?;
            let traj = NumericPinney::integrate(params, model, rho0, rho_dot0, t, &Dopri5::default())?;
            phase_along(&traj, model, params.eps0, n, t)
        }
    }
}

/// θ_n(t) along an arbitrary Pinney trajectory.
pub fn phase_along<T: PinneyTrajectory + ?Sized>(
    traj: &T,
    model: &ConductivityModel,
    eps0: f64,
    n: u32,
    t: f64,
) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    // Simpson needs a plain f64 closure; stash the first failure and report it after.
    let mut failure = None;
    let integral = adaptive_simpson(
        |s| match traj.state(s) {
            Ok(st) => 1.0 / (model.l_factor(eps0, s) * st.rho * st.rho),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        t,
        PHASE_TOL,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(-(n as f64 + 0.5) * integral),
    }
}

/// ψ_n(q, t), including the time-dependent phase stored in the snapshot.
pub fn wavefunction(snap: &QuantumSnapshot, q: f64) -> Complex64 {
    let w = snap.width();
    let amplitude = hermite_function(snap.n, q / w) / w.sqrt();
    let arg = snap.l * snap.rho_dot * q * q / (2.0 * snap.hbar * snap.rho) + snap.phase;
    Complex64::from_polar(amplitude, arg)
}

/// |ψ_n(q, t)|² from the real closed form.
pub fn density(snap: &QuantumSnapshot, q: f64) -> f64 {
    let w = snap.width();
    let h = hermite_function(snap.n, q / w);
    h * h / w
}

/// Density sampled on a charge grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile {
    pub q_grid: Vec<f64>,
    pub p_values: Vec<f64>,
    pub snapshot: QuantumSnapshot,
}

impl DensityProfile {
    /// Trapezoid integral of the samples.
    pub fn norm(&self) -> f64 {
        self.q_grid
            .windows(2)
            .zip(self.p_values.windows(2))
            .map(|(q, p)| 0.5 * (q[1] - q[0]) * (p[0] + p[1]))
            .sum()
    }

    /// Whether the grid reaches the truncation radius on both sides.
    pub fn covers_support(&self) -> bool {
        let r = self.snapshot.truncation_radius();
        match (self.q_grid.first(), self.q_grid.last()) {
            (Some(&lo), Some(&hi)) => lo <= -r && hi >= r,
            _ => false,
        }
    }

    /// Number of sign changes of H_n(q/(√ħρ)) across the grid, i.e. interior nodes.
    pub fn node_count(&self) -> usize {
        let w = self.snapshot.width();
        let signs: Vec<f64> = self
            .q_grid
            .iter()
            .map(|&q| hermite_function(self.snapshot.n, q / w))
            .filter(|v| *v != 0.0)
            .collect();
        signs.windows(2).filter(|s| s[0].signum() != s[1].signum()).count()
    }
}

pub fn density_profile(snap: &QuantumSnapshot, q_grid: &[f64]) -> Result<DensityProfile> {
    if q_grid.len() < 2 {
        return Err(Error::domain("density_profile", "grid needs at least two points"));
    }
    if q_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("density_profile", "grid must be strictly ascending"));
    }
    Ok(DensityProfile {
        q_grid: q_grid.to_vec(),
        p_values: q_grid.iter().map(|&q| density(snap, q)).collect(),
        snapshot: *snap,
    })
}

/// First and second moments of charge q and flux Φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean_q: f64,
    pub mean_phi: f64,
    pub q2: f64,
    pub phi2: f64,
}

/// ⟨q⟩ = ⟨Φ⟩ = 0, ⟨q²⟩ = ħρ²(n+½), ⟨Φ²⟩ = (ħ/ρ²)(1 + L²ρ²ρ̇²)(n+½).
pub fn moments(snap: &QuantumSnapshot) -> Moments {
    let lvl = snap.level();
    let rho2 = snap.rho * snap.rho;
    Moments {
        mean_q: 0.0,
        mean_phi: 0.0,
        q2: snap.hbar * rho2 * lvl,
        phi2: snap.hbar / rho2 * (1.0 + snap.squeeze()) * lvl,
    }
}

/// ΔqΔΦ = ħ (1 + L²ρ²ρ̇²)^{1/2} (n + ½).
pub fn uncertainty_product(snap: &QuantumSnapshot) -> f64 {
    snap.eigenvalue() * (1.0 + snap.squeeze()).sqrt()
}

/// ⟨E_n⟩ = [(1 + L²ρ²ρ̇²)/(2L²ρ²) + ω²ρ²/2] (n + ½) ħ.
pub fn energy_mean(snap: &QuantumSnapshot) -> f64 {
    let rho2 = snap.rho * snap.rho;
    let l2 = snap.l * snap.l;
    ((1.0 + snap.squeeze()) / (2.0 * l2 * rho2) + 0.5 * snap.omega_sq * rho2) * snap.eigenvalue()
}

/// Composite Gauss–Legendre rule in the Hermite variable x, split at the
/// zeros of H_n so every panel sees a smooth, single-signed integrand.
type ScaledRule = Arc<(Vec<f64>, Vec<f64>)>;

fn scaled_rule(n: u32) -> Result<ScaledRule> {
    static CACHE: OnceLock<Mutex<HashMap<u32, ScaledRule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&n) {
        return Ok(Arc::clone(rule));
    }
    let x_max = scaled_radius(n);
    let mut breaks = vec![-x_max];
    breaks.extend_from_slice(hermite(n)?.roots());
    breaks.push(x_max);
    let panels = breaks.len() - 1;
    let per_panel = MIN_PANEL_POINTS.max(MIN_TOTAL_POINTS.div_ceil(panels));
    let base = gauss_legendre(per_panel, -1.0, 1.0)?;
    let mut nodes = Vec::with_capacity(panels * per_panel);
    let mut weights = Vec::with_capacity(panels * per_panel);
    for b in breaks.windows(2) {
        let panel = base.remap(b[0], b[1]);
        nodes.extend_from_slice(panel.nodes());
        weights.extend_from_slice(panel.weights());
    }
    let rule = Arc::new((nodes, weights));
    cache.lock().unwrap().insert(n, Arc::clone(&rule));
    Ok(rule)
}

/// ∫ f(q, P(q)) dq over the truncation interval, with at least 400 nodes.
pub fn integrate_density<F: FnMut(f64, f64) -> f64>(snap: &QuantumSnapshot, mut f: F) -> Result<f64> {
    let rule = scaled_rule(snap.n)?;
    let w = snap.width();
    let mut acc = crate::special::KahanSum::new();
    for (&x, &wt) in rule.0.iter().zip(&rule.1) {
        let h = hermite_function(snap.n, x);
        acc.add(wt * w * f(w * x, h * h / w));
    }
    Ok(acc.value())
}

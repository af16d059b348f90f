//! The generalized Milne–Pinney equation
//!
//! ```text
//! ρ̈ + (L̇/L) ρ̇ + ω²(t) ρ = 1 / (L² ρ³)
//! ```
//!
//! solved in closed form for the hyperbolic conductivity and numerically for
//! any [`ConductivityModel`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::ode::{check_grid, DenseTrajectory, Dopri5};
use crate::dynamics::{omega_sq, ConductivityModel, SuperconductorParams};
use crate::error::{Error, Result};
use crate::special::bessel_pair;

/// Amplitudes below this are treated as a collapse of the solution.
pub const RHO_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PinneySource {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinneyState {
    pub t: f64,
    pub rho: f64,
    pub rho_dot: f64,
    pub source: PinneySource,
}

/// Anything that can report ρ(t) and ρ̇(t) on demand.
pub trait PinneyTrajectory {
    fn state(&self, t: f64) -> Result<PinneyState>;
}

/// Exact Bessel-function solution for σ(t) = σ₀/(At + 1):
///
/// ```text
/// ρ(t) = √(π/2A) (At+1)^{(1−s)/2} [J_β²(k(At+1)) + Y_β²(k(At+1))]^{1/2}
/// ```
///
/// with s = σ₀/(Aε₀), β = (1+s)/2 and k = c/(λ_L A).
///
/// The formula holds wherever At + 1 > 0, so slightly negative times are
/// accepted; this lets central differences straddle t = 0.
pub fn rho_analytic(params: &SuperconductorParams, t: f64) -> Result<PinneyState> {
    if !(params.rate * t + 1.0 > 0.0) {
        return Err(Error::domain("rho_analytic", format!("t = {t} requires At + 1 > 0")));
    }
    let a = params.rate;
    let s = params.conductivity_ratio();
    let beta = params.beta();
    let k = params.k();
    let tau = a * t + 1.0;
    let x = k * tau;
    let bp = bessel_pair(beta, x).map_err(|e| match e {
        Error::Domain { detail, .. } => Error::domain(
            "rho_analytic",
            format!("sigma0 = {}, t = {t}: {detail}", params.sigma0),
        ),
        other => other,
    })?;

    let norm = (PI / (2.0 * a)).sqrt();
    let exponent = 0.5 * (1.0 - s);
    let modulus = bp.j.hypot(bp.y);
    let power = tau.powf(exponent);
    let rho = norm * power * modulus;
    // d/dτ of τ^e·R(kτ), then chain rule dτ/dt = A
    let d_modulus = k * (bp.j * bp.dj + bp.y * bp.dy) / modulus;
    let rho_dot = a * norm * (exponent * power / tau * modulus + power * d_modulus);
    Ok(PinneyState {
        t,
        rho,
        rho_dot,
        source: PinneySource::Analytic,
    })
}

/// [`rho_analytic`] packaged as a trajectory.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticPinney {
    pub params: SuperconductorParams,
}

impl PinneyTrajectory for AnalyticPinney {
    fn state(&self, t: f64) -> Result<PinneyState> {
        rho_analytic(&self.params, t)
    }
}

/// Right-hand side of the Pinney equation as a first-order system in (ρ, ρ̇).
fn pinney_rhs<'a>(
    params: &'a SuperconductorParams,
    model: &'a ConductivityModel,
) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] + 'a {
    move |t, y| {
        let l = model.l_factor(params.eps0, t);
        let rho = y[0];
        let accel = -model.damping(params.eps0, t) * y[1] - omega_sq(params, model, t) * rho
            + 1.0 / (l * l * rho * rho * rho);
        [y[1], accel]
    }
}

fn singularity_guard(t: f64, y: &[f64; 2]) -> Result<()> {
    if !(y[0] >= RHO_FLOOR) {
        return Err(Error::Singularity { t, floor: RHO_FLOOR });
    }
    Ok(())
}

/// Dense numeric Pinney solution.
#[derive(Debug, Clone)]
pub struct NumericPinney {
    trajectory: DenseTrajectory<2>,
}

impl NumericPinney {
    pub fn integrate(
        params: &SuperconductorParams,
        model: &ConductivityModel,
        rho0: f64,
        rho_dot0: f64,
        t_end: f64,
        solver: &Dopri5,
    ) -> Result<Self> {
        if !(rho0 > 0.0) {
            return Err(Error::InvalidParameter(format!("rho0 = {rho0} must be positive")));
        }
        let trajectory = solver.integrate(
            pinney_rhs(params, model),
            0.0,
            [rho0, rho_dot0],
            t_end,
            singularity_guard,
        )?;
        Ok(Self { trajectory })
    }

    pub fn t_end(&self) -> f64 {
        self.trajectory.t_end()
    }
}

impl PinneyTrajectory for NumericPinney {
    fn state(&self, t: f64) -> Result<PinneyState> {
        let y = self.trajectory.eval(t).ok_or_else(|| {
            Error::domain(
                "NumericPinney::state",
                format!("t = {t} outside [0, {}]", self.trajectory.t_end()),
            )
        })?;
        Ok(PinneyState {
            t,
            rho: y[0],
            rho_dot: y[1],
            source: PinneySource::Numeric,
        })
    }
}

/// Integrates the Pinney equation at the default 1e-10 tolerance and samples it on `t_grid`.
pub fn solve_pinney_numeric(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    rho0: f64,
    rho_dot0: f64,
    t_grid: &[f64],
) -> Result<Vec<PinneyState>> {
    solve_pinney_with(params, model, rho0, rho_dot0, t_grid, &Dopri5::default())
}

pub fn solve_pinney_with(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    rho0: f64,
    rho_dot0: f64,
    t_grid: &[f64],
    solver: &Dopri5,
) -> Result<Vec<PinneyState>> {
    check_grid(t_grid)?;
    if t_grid[0] != 0.0 {
        return Err(Error::InvalidParameter("Pinney time grid must start at t = 0".into()));
    }
    let sol = NumericPinney::integrate(params, model, rho0, rho_dot0, *t_grid.last().unwrap(), solver)?;
    t_grid.iter().map(|&t| sol.state(t)).collect()
}

/// Initial conditions to use when the caller gives none: the analytic values at
/// t = 0 for the hyperbolic model, otherwise the LC equilibrium (ω₀^{−1/2}, 0).
pub fn default_seed(params: &SuperconductorParams, model: &ConductivityModel) -> Result<(f64, f64)> {
    match model {
        ConductivityModel::Hyperbolic { .. } => {
            let s = rho_analytic(params, 0.0)?;
            Ok((s.rho, s.rho_dot))
        }
        _ => Ok((params.omega0_sq().powf(-0.25), 0.0)),
    }
}

/// |ρ̈ + (L̇/L)ρ̇ + ω²ρ − 1/(L²ρ³)| at a state whose ρ̈ is supplied by the caller.
pub fn pinney_residual(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    state: &PinneyState,
    rho_ddot: f64,
) -> f64 {
    let l = model.l_factor(params.eps0, state.t);
    (rho_ddot + model.damping(params.eps0, state.t) * state.rho_dot
        + omega_sq(params, model, state.t) * state.rho
        - 1.0 / (l * l * state.rho.powi(3)))
    .abs()
}

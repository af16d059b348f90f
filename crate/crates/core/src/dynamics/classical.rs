use crate::dynamics::ode::{check_grid, Dopri5};
use crate::dynamics::pinney::PinneyState;
use crate::dynamics::{omega_sq, ConductivityModel, SuperconductorParams};
use crate::error::{Error, Result};

/// Charge and canonical flux at one instant; `phi = L(t)·q_dot`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub t: f64,
    pub q: f64,
    pub q_dot: f64,
    pub phi: f64,
}

/// Damped charge equation q̈ + (σ/ε₀) q̇ + ω² q = 0.
pub fn solve_classical(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    q0: f64,
    q_dot0: f64,
    t_grid: &[f64],
) -> Result<Vec<ClassicalState>> {
    solve_classical_with(params, model, q0, q_dot0, t_grid, &Dopri5::default())
}

pub fn solve_classical_with(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    q0: f64,
    q_dot0: f64,
    t_grid: &[f64],
    solver: &Dopri5,
) -> Result<Vec<ClassicalState>> {
    check_grid(t_grid)?;
    if t_grid[0] != 0.0 {
        return Err(Error::InvalidParameter("classical time grid must start at t = 0".into()));
    }
    let rhs = |t: f64, y: &[f64; 2]| {
        [
            y[1],
            -model.damping(params.eps0, t) * y[1] - omega_sq(params, model, t) * y[0],
        ]
    };
    let samples = solver.solve_on_grid(rhs, [q0, q_dot0], t_grid, |_, _| Ok(()))?;
    Ok(t_grid
        .iter()
        .zip(samples)
        .map(|(&t, [q, q_dot])| ClassicalState {
            t,
            q,
            q_dot,
            phi: model.l_factor(params.eps0, t) * q_dot,
        })
        .collect())
}

/// Lewis–Riesenfeld invariant I = ½[(q/ρ)² + (ρΦ − Lρ̇q)²] evaluated on a
/// classical trajectory point.
pub fn invariant_value(
    params: &SuperconductorParams,
    model: &ConductivityModel,
    cs: &ClassicalState,
    ps: &PinneyState,
) -> Result<f64> {
    if (cs.t - ps.t).abs() > 1e-12 * cs.t.abs().max(1.0) {
        return Err(Error::TimeMismatch {
            classical: cs.t,
            pinney: ps.t,
        });
    }
    let l = model.l_factor(params.eps0, cs.t);
    let phi = l * cs.q_dot;
    let a = cs.q / ps.rho;
    let b = ps.rho * phi - l * ps.rho_dot * cs.q;
    Ok(0.5 * (a * a + b * b))
}

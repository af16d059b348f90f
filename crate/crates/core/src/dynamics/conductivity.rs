use serde::{Deserialize, Serialize};

use crate::dynamics::SuperconductorParams;
use crate::error::{Error, Result};
use crate::special::adaptive_simpson;

const L_INTEGRAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductivityKind {
    Hyperbolic,
    Constant,
    Tabulated,
}

/// Piecewise-linear σ(t) through user samples, held constant past the last knot.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedConductivity {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedConductivity {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::InvalidParameter(
                "tabulated conductivity needs at least two (t, sigma) samples".into(),
            ));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidParameter("tabulated conductivity must start at t = 0".into()));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("tabulated times must be strictly ascending".into()));
        }
        Ok(Self { times, values })
    }

    fn segment(&self, t: f64) -> Option<usize> {
        if t >= *self.times.last().unwrap() {
            return None;
        }
        let idx = self.times.partition_point(|&x| x <= t);
        Some(idx.saturating_sub(1))
    }

    fn value(&self, t: f64) -> f64 {
        match self.segment(t) {
            None => *self.values.last().unwrap(),
            Some(i) => {
                let (t0, t1) = (self.times[i], self.times[i + 1]);
                let w = (t - t0) / (t1 - t0);
                self.values[i] + w * (self.values[i + 1] - self.values[i])
            }
        }
    }

    fn slope(&self, t: f64) -> f64 {
        match self.segment(t) {
            None => 0.0,
            Some(i) => (self.values[i + 1] - self.values[i]) / (self.times[i + 1] - self.times[i]),
        }
    }
}

/// Time-dependent conductivity σ(t) of the normal-electron fluid.
#[derive(Debug, Clone, PartialEq)]
pub enum ConductivityModel {
    /// σ(t) = σ₀/(At + 1).
    Hyperbolic { sigma0: f64, rate: f64 },
    /// σ(t) = σ; σ = 0 reduces to the lossless LC oscillator.
    Constant { sigma: f64 },
    Tabulated(TabulatedConductivity),
}

impl ConductivityModel {
    pub fn hyperbolic(params: &SuperconductorParams) -> Self {
        ConductivityModel::Hyperbolic {
            sigma0: params.sigma0,
            rate: params.rate,
        }
    }

    pub fn constant(sigma: f64) -> Self {
        ConductivityModel::Constant { sigma }
    }

    pub fn kind(&self) -> ConductivityKind {
        match self {
            ConductivityModel::Hyperbolic { .. } => ConductivityKind::Hyperbolic,
            ConductivityModel::Constant { .. } => ConductivityKind::Constant,
            ConductivityModel::Tabulated(_) => ConductivityKind::Tabulated,
        }
    }

    pub fn sigma(&self, t: f64) -> f64 {
        match self {
            ConductivityModel::Hyperbolic { sigma0, rate } => sigma0 / (rate * t + 1.0),
            ConductivityModel::Constant { sigma } => *sigma,
            ConductivityModel::Tabulated(tab) => tab.value(t),
        }
    }

    pub fn sigma_dot(&self, t: f64) -> f64 {
        match self {
            ConductivityModel::Hyperbolic { sigma0, rate } => {
                let tau = rate * t + 1.0;
                -sigma0 * rate / (tau * tau)
            }
            ConductivityModel::Constant { .. } => 0.0,
            ConductivityModel::Tabulated(tab) => tab.slope(t),
        }
    }

    /// L(t) = exp(∫₀ᵗ σ/ε₀ dt′), so L(0) = 1.
    pub fn l_factor(&self, eps0: f64, t: f64) -> f64 {
        match self {
            ConductivityModel::Hyperbolic { sigma0, rate } => {
                (rate * t + 1.0).powf(sigma0 / (rate * eps0))
            }
            ConductivityModel::Constant { sigma } => (sigma * t / eps0).exp(),
            ConductivityModel::Tabulated(tab) => {
                let mut acc = 0.0;
                let mut start = 0.0;
                // integrate knot to knot so each Simpson panel sees a smooth integrand
                for &knot in tab.times.iter().skip(1) {
                    if knot >= t {
                        break;
                    }
                    acc += adaptive_simpson(|s| tab.value(s), start, knot, L_INTEGRAL_TOL);
                    start = knot;
                }
                acc += adaptive_simpson(|s| tab.value(s), start, t, L_INTEGRAL_TOL);
                (acc / eps0).exp()
            }
        }
    }

    /// L̇/L = σ(t)/ε₀.
    pub fn damping(&self, eps0: f64, t: f64) -> f64 {
        self.sigma(t) / eps0
    }
}

/// L(t) = (At + 1)^{σ₀/(Aε₀)} for the hyperbolic conductivity.
pub fn l_closed_form(params: &SuperconductorParams, t: f64) -> f64 {
    (params.rate * t + 1.0).powf(params.conductivity_ratio())
}

/// ω²(t) = c²/λ_L² + σ̇(t)/ε₀; negative values are returned as is.
pub fn omega_sq(params: &SuperconductorParams, model: &ConductivityModel, t: f64) -> f64 {
    params.omega0_sq() + model.sigma_dot(t) / params.eps0
}

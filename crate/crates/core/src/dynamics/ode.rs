//! Dormand–Prince 5(4) integrator with Hairer's continuous extension.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;

/// Adaptive step controller settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-10,
            max_steps: 1_000_000,
        }
    }
}

impl Dopri5 {
    pub fn with_tolerance(tol: f64) -> Self {
        Self {
            rtol: tol,
            atol: tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
struct DenseStep<const N: usize> {
    t: f64,
    h: f64,
    coeffs: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    fn eval(&self, t: f64) -> [f64; N] {
        let theta = (t - self.t) / self.h;
        let theta1 = 1.0 - theta;
        let [r1, r2, r3, r4, r5] = &self.coeffs;
        std::array::from_fn(|i| {
            r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])))
        })
    }
}

/// Continuous solution on `[t_start, t_end]`.
#[derive(Debug, Clone)]
pub struct DenseTrajectory<const N: usize> {
    t_start: f64,
    y_start: [f64; N],
    steps: Vec<DenseStep<N>>,
}

impl<const N: usize> DenseTrajectory<N> {
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.steps.last().map_or(self.t_start, |s| s.t + s.h)
    }

    pub fn accepted_steps(&self) -> usize {
        self.steps.len()
    }

    /// Interpolated state, `None` outside the integrated interval.
    pub fn eval(&self, t: f64) -> Option<[f64; N]> {
        if t == self.t_start {
            return Some(self.y_start);
        }
        if t < self.t_start || t > self.t_end() {
            return None;
        }
        let idx = self.steps.partition_point(|s| s.t + s.h < t);
        self.steps.get(idx).map(|s| s.eval(t))
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

impl Dopri5 {
    /// Integrates `y' = rhs(t, y)` from `t0` to `t_end`.
    ///
    /// `guard` sees every accepted state and may abort the run.
    pub fn integrate<const N: usize, F, G>(
        &self,
        rhs: F,
        t0: f64,
        y0: [f64; N],
        t_end: f64,
        mut guard: G,
    ) -> Result<DenseTrajectory<N>>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        G: FnMut(f64, &[f64; N]) -> Result<()>,
    {
        let mut traj = DenseTrajectory {
            t_start: t0,
            y_start: y0,
            steps: Vec::new(),
        };
        if t_end <= t0 {
            return Ok(traj);
        }
        guard(t0, &y0)?;

        let span = t_end - t0;
        let mut t = t0;
        let mut y = y0;
        let mut k1 = rhs(t, &y);
        let mut h = self.initial_step(&y, &k1, span);
        let mut last_rejected = false;

        for _ in 0..self.max_steps {
            if t >= t_end {
                return Ok(traj);
            }
            let min_step = 16.0 * f64::EPSILON * t.abs().max(span);
            if h < min_step {
                return Err(Error::StepUnderflow { t });
            }
            if t + h > t_end {
                h = t_end - t;
            }

            let k2 = rhs(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
            let k3 = rhs(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = rhs(
                t + C5 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = rhs(
                t + h,
                &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = rhs(t + h, &y_new);

            let mut err_sq = 0.0;
            for i in 0..N {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                err_sq += (e / scale).powi(2);
            }
            let err = (err_sq / N as f64).sqrt();

            if err <= 1.0 {
                let r2: [f64; N] = std::array::from_fn(|i| y_new[i] - y[i]);
                let r3: [f64; N] = std::array::from_fn(|i| h * k1[i] - r2[i]);
                let r4: [f64; N] = std::array::from_fn(|i| r2[i] - h * k7[i] - r3[i]);
                let r5: [f64; N] = std::array::from_fn(|i| {
                    h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
                });
                traj.steps.push(DenseStep {
                    t,
                    h,
                    coeffs: [y, r2, r3, r4, r5],
                });
                t += h;
                if t_end - t < 4.0 * f64::EPSILON * t.abs().max(1.0) {
                    t = t_end;
                    if let Some(last) = traj.steps.last_mut() {
                        last.h = t_end - last.t;
                    }
                }
                y = y_new;
                k1 = k7;
                guard(t, &y)?;

                let mut factor = if err == 0.0 {
                    MAX_FACTOR
                } else {
                    (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                };
                if last_rejected {
                    factor = factor.min(1.0);
                }
                last_rejected = false;
                h *= factor;
            } else {
                let factor = if err.is_finite() {
                    (SAFETY * err.powf(-0.2)).max(MIN_FACTOR)
                } else {
                    MIN_FACTOR
                };
                h *= factor;
                last_rejected = true;
            }
        }
        Err(Error::StepUnderflow { t })
    }

    fn initial_step<const N: usize>(&self, y: &[f64; N], f: &[f64; N], span: f64) -> f64 {
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for i in 0..N {
            let sc = self.atol + self.rtol * y[i].abs();
            d0 += (y[i] / sc).powi(2);
            d1 += (f[i] / sc).powi(2);
        }
        let h = if d0 < 1e-10 || d1 < 1e-10 {
            1e-6
        } else {
            0.01 * (d0 / d1).sqrt()
        };
        h.min(span)
    }

    /// Samples the solution on an ascending grid that starts at `t0`.
    pub fn solve_on_grid<const N: usize, F, G>(
        &self,
        rhs: F,
        y0: [f64; N],
        grid: &[f64],
        guard: G,
    ) -> Result<Vec<[f64; N]>>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        G: FnMut(f64, &[f64; N]) -> Result<()>,
    {
        check_grid(grid)?;
        let traj = self.integrate(rhs, grid[0], y0, *grid.last().unwrap(), guard)?;
        Ok(grid
            .iter()
            .map(|&t| traj.eval(t).expect("grid lies inside the integrated span"))
            .collect())
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("time grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("time grid must be strictly ascending".into()));
    }
    Ok(())
}

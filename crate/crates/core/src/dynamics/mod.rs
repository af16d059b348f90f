//! Time-dependent coefficients, the classical charge equation, the
//! generalized Milne–Pinney equation and the Lewis–Riesenfeld invariant.

mod classical;
mod conductivity;
pub mod ode;
mod params;
mod pinney;

pub use classical::{invariant_value, solve_classical, solve_classical_with, ClassicalState};
pub use conductivity::{
    l_closed_form, omega_sq, ConductivityKind, ConductivityModel, TabulatedConductivity,
};
pub use ode::Dopri5;
pub use params::SuperconductorParams;
pub use pinney::{
    default_seed, pinney_residual, rho_analytic, solve_pinney_numeric, solve_pinney_with,
    AnalyticPinney, NumericPinney, PinneySource, PinneyState, PinneyTrajectory, RHO_FLOOR,
};

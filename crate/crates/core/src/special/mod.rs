//! Real-valued special functions and quadrature rules.
//!
//! Everything here is a pure function of its arguments. Series loops use
//! compensated summation; the alternating ₂F₂ series is accumulated in
//! double-double.

mod bell;
mod bessel;
mod gamma;
mod hermite;
mod hypergeometric;
mod quadrature;
mod summation;

pub use bell::{bell_partial, MAX_BELL_INDEX};
pub use bessel::{bessel_j, bessel_pair, bessel_y, BesselPair, MAX_ARGUMENT, MAX_ORDER};
pub use gamma::{binomial, factorial, gamma_fn, EULER_GAMMA};
pub use hermite::{hermite, hermite_eval, hermite_function, HermiteTable, MAX_HERMITE_ORDER};
pub use hypergeometric::{dawson, hyp1f1_special, hyp2f2_special};
pub use quadrature::{adaptive_simpson, gauss_legendre, QuadratureRule};
pub use summation::KahanSum;

pub(crate) use bell::bell_table;

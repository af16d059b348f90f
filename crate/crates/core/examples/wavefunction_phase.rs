//! Complex wavefunction samples: the phase θ_n(t) and the chirp from ρ̇ leave
//! |ψ|² untouched.

use tdq::dynamics::{ConductivityModel, SuperconductorParams};
use tdq::observables::{density, phase, wavefunction, QuantumSnapshot};

fn main() -> tdq::Result<()> {
    let params = SuperconductorParams::figure_units(1.5)?;
    let model = ConductivityModel::hyperbolic(&params);
    for n in 0..=2 {
        println!("n = {n}: theta(1) = {:.10}, theta(3) = {:.10}", phase(&params, &model, n, 1.0)?, phase(&params, &model, n, 3.0)?);
    }

    let snap = QuantumSnapshot::hyperbolic(&params, 2, 1.0)?;
    for q in [-1.5, -0.5, 0.0, 0.7, 1.2] {
        let psi = wavefunction(&snap, q);
        println!("q = {q:>5}: psi = {:>12.8} {:+.8}i  |psi|^2 = {:.10}  P = {:.10}", psi.re, psi.im, psi.norm_sqr(), density(&snap, q));
    }
    Ok(())
}

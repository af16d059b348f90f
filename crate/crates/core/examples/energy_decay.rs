//! Mean energy per level and the uncertainty product along the exact solution.

use tdq::dynamics::SuperconductorParams;
use tdq::observables::{energy_mean, uncertainty_product, QuantumSnapshot};

fn main() -> tdq::Result<()> {
    println!("{:>5} {:>8} {:>14} {:>14}", "t", "sigma0", "<E>/(n+1/2)", "dq*dphi");
    for sigma0 in [0.4, 0.6, 0.8] {
        let params = SuperconductorParams::figure_units(sigma0)?;
        for t in [0.0, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0] {
            let snap = QuantumSnapshot::hyperbolic(&params, 0, t)?;
            println!(
                "{t:>5.1} {sigma0:>8.1} {:>14.8} {:>14.8}",
                energy_mean(&snap) / snap.level(),
                uncertainty_product(&snap)
            );
        }
    }
    Ok(())
}

//! Ground-state charge densities: higher conductivity and later times both
//! squeeze the distribution.

use tdq::dynamics::SuperconductorParams;
use tdq::observables::{density, density_profile, QuantumSnapshot};

fn main() -> tdq::Result<()> {
    let grid: Vec<f64> = (-400..=400).map(|i| i as f64 * 0.02).collect();

    println!("t = 0.5, varying sigma0");
    for sigma0 in [0.5, 3.0] {
        let snap = QuantumSnapshot::hyperbolic(&SuperconductorParams::figure_units(sigma0)?, 0, 0.5)?;
        let prof = density_profile(&snap, &grid)?;
        println!("  sigma0 = {sigma0}: rho = {:.6}, P(0) = {:.6}, norm = {:.9}", snap.rho, density(&snap, 0.0), prof.norm());
    }

    println!("sigma0 = 1.5, varying t");
    let params = SuperconductorParams::figure_units(1.5)?;
    for t in [0.0, 0.5, 1.0] {
        let snap = QuantumSnapshot::hyperbolic(&params, 0, t)?;
        println!("  t = {t}: P(0) = {:.6}", density(&snap, 0.0));
    }

    // excited levels keep exactly n nodes
    for n in 1..=3 {
        let snap = QuantumSnapshot::hyperbolic(&params, n, 1.0)?;
        println!("  n = {n}: nodes = {}", density_profile(&snap, &grid)?.node_count());
    }
    Ok(())
}

//! The invariant I = ½[(q/ρ)² + (ρΦ − Lρ̇q)²] along damped classical
//! trajectories, with ρ from the exact solution.

use tdq::dynamics::{invariant_value, rho_analytic, solve_classical, ConductivityModel, SuperconductorParams};

fn main() -> tdq::Result<()> {
    let params = SuperconductorParams::figure_units(2.5)?;
    let model = ConductivityModel::hyperbolic(&params);
    let grid: Vec<f64> = (0..=10).map(|i| 0.5 * i as f64).collect();
    let traj = solve_classical(&params, &model, 1.0, -0.4, &grid)?;

    println!("{:>5} {:>14} {:>14} {:>18}", "t", "q", "phi", "I");
    for cs in &traj {
        let i = invariant_value(&params, &model, cs, &rho_analytic(&params, cs.t)?)?;
        println!("{:>5.2} {:>14.8} {:>14.8} {:>18.14}", cs.t, cs.q, cs.phi, i);
    }
    Ok(())
}

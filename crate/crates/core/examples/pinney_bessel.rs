//! Exact Bessel-function amplitude against a direct integration of the
//! Pinney equation, for the hyperbolic conductivity.

use tdq::dynamics::{
    rho_analytic, ConductivityModel, Dopri5, NumericPinney, PinneyTrajectory, SuperconductorParams,
};

fn main() -> tdq::Result<()> {
    let params = SuperconductorParams::figure_units(2.0)?;
    let model = ConductivityModel::hyperbolic(&params);
    let seed = rho_analytic(&params, 0.0)?;
    let numeric = NumericPinney::integrate(&params, &model, seed.rho, seed.rho_dot, 5.0, &Dopri5::default())?;

    println!("beta = {}, k = {}", params.beta(), params.k());
    println!("{:>5} {:>20} {:>20} {:>10}", "t", "rho (Bessel)", "rho (DP5)", "diff");
    for i in 0..=10 {
        let t = 0.5 * i as f64;
        let exact = rho_analytic(&params, t)?;
        let approx = numeric.state(t)?;
        println!("{t:>5.2} {:>20.15} {:>20.15} {:>10.2e}", exact.rho, approx.rho, (exact.rho - approx.rho).abs());
    }
    Ok(())
}

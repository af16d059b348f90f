//! Constant conductivity has no closed form; the numeric Pinney solver covers it.
//! With σ = 0 the lossless LC oscillator comes back: ρ stays at ω₀^{−1/2}.

use tdq::dynamics::{default_seed, solve_pinney_numeric, ConductivityModel, SuperconductorParams};
use tdq::observables::{energy_mean, QuantumSnapshot};

fn main() -> tdq::Result<()> {
    let params = SuperconductorParams::new(0.0, 1.0, 1.0, 2.0, 1.0, 1.0)?;
    let grid: Vec<f64> = (0..=4).map(|i| i as f64).collect();
    for sigma in [0.0, 0.3] {
        let model = ConductivityModel::constant(sigma);
        let (rho0, rho_dot0) = default_seed(&params, &model)?;
        for st in solve_pinney_numeric(&params, &model, rho0, rho_dot0, &grid)? {
            let snap = QuantumSnapshot::assemble(&params, &model, 0, &st)?;
            println!("sigma={sigma} t={} rho={:.12} <E>={:.12}", st.t, st.rho, energy_mean(&snap));
        }
    }
    Ok(())
}

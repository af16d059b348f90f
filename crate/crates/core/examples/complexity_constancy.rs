//! Entropy power and disequilibrium both drift with time, but their product
//! does not, whatever the conductivity.

use tdq::dynamics::{ConductivityModel, SuperconductorParams};
use tdq::information::measures_over_time;

fn main() -> tdq::Result<()> {
    let times: Vec<f64> = (0..=4).map(|i| 0.5 * i as f64).collect();
    for n in 0..=2 {
        for sigma0 in [2.0, 3.0] {
            let params = SuperconductorParams::figure_units(sigma0)?;
            let model = ConductivityModel::hyperbolic(&params);
            for m in measures_over_time(&params, &model, n, &times)? {
                println!(
                    "n={n} sigma0={sigma0} t={:.1}  H={:.6}  D={:.6}  C={:.12}",
                    m.t, m.h, m.disequilibrium_d, m.complexity_c
                );
            }
        }
    }
    println!("sqrt(e/2) = {:.12}", (std::f64::consts::E / 2.0).sqrt());
    Ok(())
}

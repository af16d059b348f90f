//! A few identities the special-function layer satisfies.

use std::f64::consts::PI;

use tdq::special::{bell_partial, bessel_pair, dawson, hermite, hyp1f1_special, hyp2f2_special};

fn main() -> tdq::Result<()> {
    for (nu, x) in [(0.5, 3.0), (1.75, 8.0), (10.0, 45.0)] {
        let b = bessel_pair(nu, x)?;
        println!("nu={nu:<5} x={x:<5} J={:+.15} Y={:+.15} W*pi*x/2={:.15}", b.j, b.y, (b.j * b.dy - b.dj * b.y) * PI * x / 2.0);
    }

    let h4 = hermite(4)?;
    println!("H_4 coefficients {:?}, roots {:?}", h4.coefficients(), h4.roots());

    for x in [0.5f64, 2.0, 5.0] {
        println!(
            "x={x}: F(x)={:.15} 1F1={:.15} 1-2xF={:.15} 2F2={:.15}",
            dawson(x),
            hyp1f1_special(-x * x)?,
            1.0 - 2.0 * x * dawson(x),
            hyp2f2_special(-x * x)?
        );
    }

    // Stirling numbers of the second kind
    let ones = [1.0; 8];
    let row: Vec<f64> = (1..=8).map(|l| bell_partial(8, l, &ones)).collect::<tdq::Result<_>>()?;
    println!("S(8, l) = {row:?}");
    Ok(())
}

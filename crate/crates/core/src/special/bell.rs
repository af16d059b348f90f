use crate::error::{Error, Result};
use crate::special::gamma::binomial;
use crate::special::summation::KahanSum;

/// Largest first index accepted; the closed-form disequilibrium needs m = 4n + 4.
pub const MAX_BELL_INDEX: usize = 64;

/// Partial Bell polynomial B_{m,l}(a_1, …, a_{m−l+1}).
///
/// Uses `B_{m,l} = Σ_{i=1}^{m−l+1} C(m−1, i−1) a_i B_{m−i, l−1}` with
/// `B_{0,0} = 1` and `B_{m,0} = 0` for m > 0.
pub fn bell_partial(m: usize, l: usize, a: &[f64]) -> Result<f64> {
    if l == 0 || l > m || m > MAX_BELL_INDEX {
        return Err(Error::domain(
            "bell_partial",
            format!("need 1 <= l <= m <= {MAX_BELL_INDEX}, got m = {m}, l = {l}"),
        ));
    }
    let needed = m - l + 1;
    if a.len() < needed {
        return Err(Error::Dimension {
            function: "bell_partial",
            expected: needed,
            got: a.len(),
        });
    }
    Ok(bell_table(m, l, a)[m][l])
}

/// Table `t[p][q] = B_{p,q}` for p ≤ m, q ≤ l.
pub(crate) fn bell_table(m: usize, l: usize, a: &[f64]) -> Vec<Vec<f64>> {
    let mut table = vec![vec![0.0; l + 1]; m + 1];
    table[0][0] = 1.0;
    for q in 1..=l {
        for p in q..=m {
            let mut acc = KahanSum::new();
            // blocks larger than a.len() cannot occur in B_{m,l}
            for i in 1..=(p - q + 1).min(a.len()) {
                let prev = table[p - i][q - 1];
                if prev != 0.0 {
                    acc.add(binomial(p as u32 - 1, i as u32 - 1) * a[i - 1] * prev);
                }
            }
            table[p][q] = acc.value();
        }
    }
    table
}

use super::spec::{DimensionTable, GeneratorSpec};
use crate::error::{Error, Result};

/// Graded dimensions of the free Lie algebra on `spec`, from the Hilbert
/// series identity `prod_n (1 - t^n)^(-dim_n) = 1 / (1 - g(t))`.
///
/// Taking logarithmic derivatives, `a_n = sum_{d | n} d * dim_d` satisfies
/// `a_n = n g_n + sum_{k<n} g_k a_{n-k}`, and the dimensions follow by
/// peeling off proper divisors.
pub fn witt_dims(spec: &GeneratorSpec, weight_bound: i64) -> Result<DimensionTable> {
    let bound = spec.check_bound(weight_bound)? as usize;
    let sign = spec.sign().unwrap_or(weight_bound.signum());
    let mut g = vec![0i128; bound + 1];
    for d in spec.degrees() {
        if (d as usize) <= bound {
            g[d as usize] += 1;
        }
    }
    let overflow = || Error::Overflow(format!("free Lie dimensions up to weight {weight_bound}"));
    let mut a = vec![0i128; bound + 1];
    let mut dims = vec![0i128; bound + 1];
    for n in 1..=bound {
        let mut acc = (n as i128).checked_mul(g[n]).ok_or_else(overflow)?;
        for k in 1..n {
            if g[k] != 0 {
                acc = g[k]
                    .checked_mul(a[n - k])
                    .and_then(|x| acc.checked_add(x))
                    .ok_or_else(overflow)?;
            }
        }
        a[n] = acc;
        let mut rest = acc;
        for d in 1..n {
            if n % d == 0 {
                rest -= d as i128 * dims[d];
            }
        }
        debug_assert_eq!(rest % n as i128, 0);
        dims[n] = rest / n as i128;
    }
    let mut table = DimensionTable::new();
    for (n, &d) in dims.iter().enumerate().skip(1) {
        table.set(sign * n as i64, u64::try_from(d).map_err(|_| overflow())?);
    }
    Ok(table)
}

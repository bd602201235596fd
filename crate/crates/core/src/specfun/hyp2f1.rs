use crate::error::{Error, Result};

/// `₂F₁(−n, b; c; x)` as the finite sum `Σ_{k=0}^{n} (−n)_k (b)_k / ((c)_k k!) x^k`.
///
/// Pochhammer factors are carried term to term, never through gamma ratios.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    for k in 0..n {
        if c + k as f64 == 0.0 {
            return Err(Error::domain(format!(
                "pochhammer pole: (c)_k vanishes for c={c} at k={}",
                k + 1
            )));
        }
    }
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - nf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

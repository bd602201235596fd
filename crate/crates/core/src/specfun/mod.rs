//! Special functions: log-gamma, the error function of complex argument and
//! the terminating Gauss hypergeometric polynomial.

mod erf;
mod hyp2f1;

pub use erf::{erf_complex, ComplexValue};
pub use hyp2f1::hyp2f1_terminating;

use crate::error::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ∫₀^∞ t^{x−1} e^{−t} dt by composite Simpson in u = ln t.
    fn gamma_by_quadrature(x: f64) -> f64 {
        let (lo, hi) = (-40.0f64, 5.0f64);
        let n = 200_000;
        let h = (hi - lo) / n as f64;
        let f = |u: f64| (x * u - u.exp()).exp();
        let mut s = f(lo) + f(hi);
        for i in 1..n {
            let u = lo + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(u);
        }
        s * h / 3.0
    }

    #[test]
    fn factorial_and_half() {
        assert!((ln_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((ln_gamma(0.5).unwrap() - sqrt_pi.ln()).abs() < 1e-14);
    }

    #[test]
    fn quadrature_oracle() {
        let expected = gamma_by_quadrature(3.7).ln();
        assert!((expected - 1.4280723266653879).abs() < 1e-10, "{expected}");
        let got = ln_gamma(3.7).unwrap();
        assert!((got - expected).abs() < 1e-12 * expected.abs(), "{got} {expected}");
    }

    #[test]
    fn recurrence_ratio() {
        let mut x = 0.5;
        while x <= 50.5 {
            let ratio = (ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap()).exp();
            assert!((ratio / x - 1.0).abs() < 1e-10, "x={x}");
            x += 1.0;
        }
    }

    #[test]
    fn domain() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(ln_gamma(170.0).unwrap().is_finite());
    }
}

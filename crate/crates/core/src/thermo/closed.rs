//! Error-function closed forms of the partition integral.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ThermoIntegrand;
use crate::error::Result;
use crate::specfun::erf_complex;

/// Which closed form [`super::partition_closed`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedForm {
    /// The expression as commonly quoted: both error functions at each limit
    /// carry the argument `aρ − b/ρ`.
    #[default]
    Printed,
    /// The antiderivative of `e^{−βE(ρ)}`: the `e^{4ab}` term carries
    /// `aρ + b/ρ`.
    Corrected,
}

/// `a = √(−P₁β)`, `b = √(−R₀β)` on the principal branch.
fn arguments(beta: f64, t: &ThermoIntegrand) -> (Complex64, Complex64) {
    let a = Complex64::new(-t.p1 * beta, 0.0).sqrt();
    let b = Complex64::new(-t.r0 * beta, 0.0).sqrt();
    (a, b)
}

/// `−e^{R₁β−2ab}√π/(4a) ([E(J) + e^{4ab}E(J)] − E(ρ_hi) − e^{4ab}E(ρ_hi))`
/// with `E(ρ) = Erf[ρa − b/ρ]`.
pub(super) fn printed(beta: f64, t: &ThermoIntegrand) -> Result<Complex64> {
    let (a, b) = arguments(beta, t);
    let erf_at = |rho: f64| erf_complex(a * rho - b / rho);
    let e4 = (4.0 * a * b).exp();
    let lo = erf_at(t.rho_lo)?;
    let hi = erf_at(t.rho_hi)?;
    let bracket = (lo + e4 * lo) - hi - e4 * hi;
    let pre = -((t.r1 * beta) - 2.0 * a * b).exp() * std::f64::consts::PI.sqrt() / (4.0 * a);
    Ok(pre * bracket)
}

/// `e^{R₁β}√π/(4a) [e^{2ab}Erf(aρ + b/ρ) + e^{−2ab}Erf(aρ − b/ρ)]` between the limits.
pub(super) fn corrected(beta: f64, t: &ThermoIntegrand) -> Result<Complex64> {
    let (a, b) = arguments(beta, t);
    let anti = |rho: f64| -> Result<Complex64> {
        let plus = erf_complex(a * rho + b / rho)?;
        let minus = erf_complex(a * rho - b / rho)?;
        Ok((2.0 * a * b).exp() * plus + (-2.0 * a * b).exp() * minus)
    };
    let diff = anti(t.rho_hi)? - anti(t.rho_lo)?;
    let pre = (t.r1 * beta).exp() * std::f64::consts::PI.sqrt() / (4.0 * a);
    Ok(pre * diff)
}

//! Physical parameters, unit conventions and the reduction to dimensionless
//! couplings used by every spectral formula.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strength, screening and control constants of the potential.
///
/// `alpha` and `delta` are kept separately for configuration fidelity; every
/// formula only sees their sum, see [`PotentialParams::screening`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialParams {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub alpha: f64,
    pub delta: f64,
    pub tau: f64,
}

impl PotentialParams {
    /// Combined screening `w = alpha + delta`.
    pub fn screening(&self) -> f64 {
        self.alpha + self.delta
    }

    pub fn zero() -> Self {
        PotentialParams {
            a: 0.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
            g: 0.0,
            k: 0.0,
            alpha: 0.0,
            delta: 0.0,
            tau: 0.0,
        }
    }

    /// Screening check required by every spectral computation.
    pub fn checked_screening(&self) -> Result<f64> {
        let w = self.screening();
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::config(format!(
                "alpha + delta must be positive, got {w}"
            )));
        }
        Ok(w)
    }
}

/// Physical constants. [`UnitSystem::default`] is natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mu: f64,
    pub e_charge: f64,
    pub c_light: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem {
            hbar: 1.0,
            mu: 1.0,
            e_charge: 1.0,
            c_light: 1.0,
        }
    }
}

impl UnitSystem {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mu", self.mu),
            ("e_charge", self.e_charge),
            ("c_light", self.c_light),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Flux quantum `2π ħ c / e`.
    pub fn flux_quantum(&self) -> f64 {
        2.0 * PI * self.hbar * self.c_light / self.e_charge
    }
}

/// External magnetic field and Aharonov–Bohm flux.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub b_field: f64,
    pub phi_ab: f64,
    pub phi0: f64,
}

impl FieldConfig {
    /// Fields with the flux quantum derived from `units`.
    pub fn new(b_field: f64, phi_ab: f64, units: &UnitSystem) -> Self {
        FieldConfig {
            b_field,
            phi_ab,
            phi0: units.flux_quantum(),
        }
    }

    pub fn off(units: &UnitSystem) -> Self {
        Self::new(0.0, 0.0, units)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.phi0 > 0.0) {
            return Err(Error::config(format!("phi0 must be positive, got {}", self.phi0)));
        }
        if !(self.b_field >= 0.0) {
            return Err(Error::config(format!(
                "b_field must be non-negative, got {}",
                self.b_field
            )));
        }
        if !(self.phi_ab >= 0.0) {
            return Err(Error::config(format!(
                "phi_ab must be non-negative, got {}",
                self.phi_ab
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i32,
}

/// One complete physical configuration: potential, fields and units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct System {
    pub potential: PotentialParams,
    pub fields: FieldConfig,
    pub units: UnitSystem,
}

impl System {
    pub fn new(potential: PotentialParams, fields: FieldConfig, units: UnitSystem) -> Self {
        System {
            potential,
            fields,
            units,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.units.validate()?;
        self.fields.validate()?;
        self.potential.checked_screening()?;
        Ok(())
    }

    pub fn with_fields(mut self, b_field: f64, phi_ab: f64) -> Self {
        self.fields.b_field = b_field;
        self.fields.phi_ab = phi_ab;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.potential.tau = tau;
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.potential.k = k;
        self
    }

    pub fn dimensionless(&self, m: i32) -> Result<DimensionlessSet> {
        reduce_to_dimensionless(&self.potential, &self.fields, &self.units, m)
    }
}

/// Dimensionless couplings of the hypergeometric reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessSet {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub v4: f64,
    pub v5: f64,
    pub u0: f64,
    pub u1: f64,
    pub eta_m: f64,
    pub xi: f64,
}

/// Which mapping from the dimensionless eigenvalue to a physical energy is
/// applied. `Printed` uses `ε = μ(E−K)/(ħ²w²)`; `Rescaled` uses
/// `ε = μ(E−K)/(2ħ²w²)`, the mapping that follows from the radial operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyVariant {
    #[default]
    Printed,
    Rescaled,
}

impl EnergyVariant {
    /// Multiplier on `ħ²w²/μ` in the energy formula.
    pub fn scale(self) -> f64 {
        match self {
            EnergyVariant::Printed => 1.0,
            EnergyVariant::Rescaled => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EnergyVariant::Printed => "printed",
            EnergyVariant::Rescaled => "rescaled",
        }
    }
}

impl std::str::FromStr for EnergyVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(EnergyVariant::Printed),
            "rescaled" => Ok(EnergyVariant::Rescaled),
            other => Err(Error::config(format!("unknown energy variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub n: u32,
    pub m: i32,
    pub epsilon: f64,
    pub energy: f64,
    pub variant: EnergyVariant,
}

/// `ξ = Φ_AB / φ₀`. Not rounded.
pub fn flux_ratio(phi_ab: f64, phi0: f64) -> Result<f64> {
    if !(phi0 > 0.0) {
        return Err(Error::config(format!("phi0 must be positive, got {phi0}")));
    }
    Ok(phi_ab / phi0)
}

/// `η_m = (m + ξ)² − 1/4`.
pub fn eta_m(m: i32, xi: f64) -> f64 {
    let s = m as f64 + xi;
    s * s - 0.25
}

pub fn reduce_to_dimensionless(
    params: &PotentialParams,
    fields: &FieldConfig,
    units: &UnitSystem,
    m: i32,
) -> Result<DimensionlessSet> {
    let w = params.checked_screening()?;
    let xi = flux_ratio(fields.phi_ab, fields.phi0)?;
    let UnitSystem {
        hbar,
        mu,
        e_charge,
        c_light,
    } = *units;
    let hb2 = hbar * hbar;

    let field_scale = e_charge * fields.b_field / (hbar * w * c_light);
    let u0 = field_scale * m as f64 + field_scale * fields.phi_ab / fields.phi0;
    let half = 0.5 * field_scale;

    Ok(DimensionlessSet {
        v0: 2.0 * mu * params.a / hb2,
        v1: 2.0 * mu * params.b / hb2,
        v2: mu * params.c / (hb2 * w),
        v3: mu * (params.d / 2.0) / (hb2 * w),
        v4: mu * (params.d / 2.0) * (1.0 + params.tau) / (hb2 * w),
        v5: 2.0 * mu * params.g / (hb2 * w),
        u0,
        u1: half * half,
        eta_m: eta_m(m, xi),
        xi,
    })
}

/// Greene–Aldrich replacement `1/r ≈ 2w/(1 − e^{−2wr})` and its relative
/// error against the exact `1/r`.
pub fn greene_aldrich(r: f64, w: f64) -> Result<(f64, f64)> {
    if !(r > 0.0) || !(w > 0.0) {
        return Err(Error::domain(format!(
            "greene_aldrich needs r > 0 and w > 0, got r={r}, w={w}"
        )));
    }
    let x = 2.0 * w * r;
    let approx = 2.0 * w / -(-x).exp_m1();
    // approx*r - 1 = x/(1-e^{-x}) - 1, evaluated without cancellation for small x
    let rel = if x < 1e-3 {
        x / 2.0 + x * x / 12.0 - x.powi(4) / 720.0
    } else {
        approx * r - 1.0
    };
    Ok((approx, rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    fn natural() -> UnitSystem {
        UnitSystem::default()
    }

    #[test]
    fn flux_ratio_examples() {
        let phi0 = 2.0 * PI;
        assert_eq!(flux_ratio(0.0, phi0).unwrap(), 0.0);
        assert_eq!(flux_ratio(phi0, phi0).unwrap(), 1.0);
        assert!(close(flux_ratio(7.0, phi0).unwrap(), 1.1140846016432675, 1e-15));
        assert!(flux_ratio(1.0, 0.0).is_err());
        assert!(flux_ratio(1.0, -1.0).is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_m(0, 0.0), -0.25);
        assert_eq!(eta_m(1, 0.0), 0.75);
        assert_eq!(eta_m(0, 0.5), 0.0);
        for m in -20..=20 {
            assert_eq!(eta_m(m, 0.0), eta_m(-m, 0.0));
        }
    }

    #[test]
    fn default_flux_quantum_is_two_pi() {
        let f = FieldConfig::off(&natural());
        assert!(close(f.phi0, 2.0 * PI, 1e-15));
    }

    #[test]
    fn uniform_reduction() {
        let p = PotentialParams {
            a: 1.0,
            b: 1.0,
            c: 1.0,
            d: 2.0,
            g: 0.5,
            k: 0.0,
            alpha: 0.2,
            delta: 0.3,
            tau: 0.0,
        };
        let f = FieldConfig::new(1.0, 0.0, &natural());
        let d = reduce_to_dimensionless(&p, &f, &natural(), 1).unwrap();
        for v in [d.v0, d.v1, d.v2, d.v3, d.v4, d.v5, d.u0] {
            assert!(close(v, 2.0, 1e-15), "{v}");
        }
        assert!(close(d.u1, 1.0, 1e-15));
        assert_eq!(d.eta_m, 0.75);
    }

    #[test]
    fn zero_reduction() {
        let mut p = PotentialParams::zero();
        p.alpha = 0.2;
        p.delta = 0.3;
        let d = reduce_to_dimensionless(&p, &FieldConfig::off(&natural()), &natural(), 0).unwrap();
        for v in [d.v0, d.v1, d.v2, d.v3, d.v4, d.v5, d.u0, d.u1] {
            assert_eq!(v, 0.0);
        }
        assert_eq!(d.eta_m, -0.25);
    }

    #[test]
    fn tau_minus_one_kills_v4() {
        let mut p = PotentialParams::zero();
        p.alpha = 0.2;
        p.delta = 0.3;
        p.d = 3.7;
        p.tau = -1.0;
        let d = reduce_to_dimensionless(&p, &FieldConfig::off(&natural()), &natural(), 0).unwrap();
        assert_eq!(d.v4, 0.0);
        assert!(d.v3 > 0.0);
    }

    #[test]
    fn nonpositive_screening_rejected() {
        let p = PotentialParams::zero();
        let r = reduce_to_dimensionless(&p, &FieldConfig::off(&natural()), &natural(), 0);
        assert!(matches!(r, Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn doubling_screening_scales_couplings() {
        let mut p = PotentialParams {
            a: 0.7,
            b: 0.3,
            c: 1.1,
            d: 2.3,
            g: 0.4,
            k: 1.0,
            alpha: 0.1,
            delta: 0.15,
            tau: 0.5,
        };
        let u = natural();
        let f = FieldConfig::new(0.8, 0.0, &u);
        let d1 = reduce_to_dimensionless(&p, &f, &u, 2).unwrap();
        p.alpha *= 2.0;
        p.delta *= 2.0;
        let d2 = reduce_to_dimensionless(&p, &f, &u, 2).unwrap();
        assert_eq!(d1.v0, d2.v0);
        assert_eq!(d1.v1, d2.v1);
        for (a, b) in [(d1.v2, d2.v2), (d1.v3, d2.v3), (d1.v4, d2.v4), (d1.v5, d2.v5), (d1.u0, d2.u0)] {
            assert!(close(b, a / 2.0, 1e-15));
        }
        assert!(close(d2.u1, d1.u1 / 4.0, 1e-15));
    }

    #[test]
    fn greene_aldrich_examples() {
        let (a, e) = greene_aldrich(1.0, 0.1).unwrap();
        assert!(close(a, 1.1033311132253991, 1e-14));
        assert!(close(e, 0.10333111322539909, 1e-12));
        let (_, e) = greene_aldrich(1.0, 0.01).unwrap();
        assert!(close(e, 0.010033333111113228, 1e-12));
        let (_, e) = greene_aldrich(1e-6, 1e-6).unwrap();
        assert!(e.abs() < 1e-11);
        assert!(greene_aldrich(0.0, 1.0).is_err());
        assert!(greene_aldrich(1.0, -1.0).is_err());
    }

    #[test]
    fn greene_aldrich_error_monotone() {
        let mut prev = 0.0;
        for i in 1..=3000 {
            let wr = i as f64 * 1e-3;
            let (_, e) = greene_aldrich(wr, 1.0).unwrap();
            assert!(e > prev, "wr={wr}");
            prev = e;
        }
    }
}

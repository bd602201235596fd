//! Closed-form spectrum, wavefunctions, and the two numerical oracles that
//! check it (asymptotic iteration and finite differences).

mod aim;
mod fd;
mod wavefunction;

pub use aim::{aim_delta, aim_solve, AimSolution, AimState};
pub use fd::{ode_eigensolve, solve_radial, FdLevels, FdOptions, OdeMode};
pub use wavefunction::{
    canonical_form, canonical_form_matched, radial_wavefunction, wavefunction_exponents, AIMCanonicalForm,
    RadialWavefunction, WavefunctionExponents,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DimensionlessSet, EnergyLevel, EnergyVariant, System};

/// Coefficients of the closed-form spectrum for one `(m, fields)` choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumCoefficients {
    pub j_tilde: f64,
    pub upsilon0: f64,
    /// `v0 − v2 + v3 + v4 − v5 + u1 − η`, the combination fixed by the
    /// quantization condition.
    pub upsilon1: f64,
    /// The same combination with `+v5`, kept for comparison.
    pub upsilon1_printed: f64,
    pub p0: f64,
    pub p1: f64,
    /// `−J̃ + √Υ₁`; NaN when `Υ₁ < 0`.
    pub n_max_real: f64,
    pub n_max: u32,
}

impl SpectrumCoefficients {
    /// Radial quantum numbers `n` with `H_n > 0`, i.e. `n + J̃ < √Υ₁`.
    pub fn bound_count(&self) -> u32 {
        if self.n_max_real > 0.0 {
            self.n_max_real.ceil() as u32
        } else {
            0
        }
    }

    pub fn is_bound(&self, n: u32) -> bool {
        n < self.bound_count()
    }

    /// `(Υ₁ − ρ²)/ρ`, the quantity whose square sets the level.
    pub fn g(&self, rho: f64) -> f64 {
        (self.upsilon1 - rho * rho) / rho
    }

    /// Energy as a continuous function of `ρ = n + J̃` (printed mapping).
    pub fn energy_at_rho(&self, rho: f64) -> f64 {
        let g = self.g(rho);
        self.p0 - self.p1 * g * g
    }
}

pub fn coefficients(dimless: &DimensionlessSet, system: &System) -> Result<SpectrumCoefficients> {
    let w = system.potential.checked_screening()?;
    let u = &system.units;
    let d = dimless;
    let radicand = 0.25 + d.v0 + d.v1 + d.v5 + d.u0 + d.u1 + d.eta_m;
    if radicand < 0.0 || radicand.is_nan() {
        return Err(Error::NoRealSolution {
            what: "J",
            radicand,
        });
    }
    let j_tilde = 0.5 + radicand.sqrt();
    let upsilon0 = d.eta_m - d.v4 + d.v5;
    let common = d.v0 - d.v2 + d.v3 + d.v4 + d.u1 - d.eta_m;
    let upsilon1 = common - d.v5;
    let upsilon1_printed = common + d.v5;
    let scale = u.hbar * u.hbar * w * w / u.mu;
    let p1 = scale / 4.0;
    let p0 = system.potential.k + scale * upsilon0;
    let n_max_real = if upsilon1 >= 0.0 {
        -j_tilde + upsilon1.sqrt()
    } else {
        f64::NAN
    };
    let n_max = if n_max_real >= 0.0 {
        n_max_real.floor() as u32
    } else {
        0
    };
    Ok(SpectrumCoefficients {
        j_tilde,
        upsilon0,
        upsilon1,
        upsilon1_printed,
        p0,
        p1,
        n_max_real,
        n_max,
    })
}

/// Coefficients for magnetic quantum number `m` of `system`.
pub fn system_coefficients(system: &System, m: i32) -> Result<SpectrumCoefficients> {
    system.validate()?;
    coefficients(&system.dimensionless(m)?, system)
}

/// `ε = v4 − v5 − η + ¼[(Υ₁ − ρ²)/ρ]²` for an arbitrary `Υ₁` and `ρ`.
pub fn epsilon_at(rho: f64, upsilon1: f64, dimless: &DimensionlessSet) -> f64 {
    let g = (upsilon1 - rho * rho) / rho;
    dimless.v4 - dimless.v5 - dimless.eta_m + 0.25 * g * g
}

pub fn epsilon_nm(n: u32, coeffs: &SpectrumCoefficients, dimless: &DimensionlessSet) -> Result<f64> {
    let rho = n as f64 + coeffs.j_tilde;
    if !(rho > 0.0) {
        return Err(Error::domain(format!("n + J must be positive, got {rho}")));
    }
    Ok(epsilon_at(rho, coeffs.upsilon1, dimless))
}

/// Physical energy of level `(n, m)`.
pub fn energy(n: u32, m: i32, system: &System, variant: EnergyVariant) -> Result<EnergyLevel> {
    system.validate()?;
    let d = system.dimensionless(m)?;
    let c = coefficients(&d, system)?;
    let epsilon = epsilon_nm(n, &c, &d)?;
    let w = system.potential.screening();
    let u = &system.units;
    let scale = variant.scale() * u.hbar * u.hbar * w * w / u.mu;
    let rho = n as f64 + c.j_tilde;
    let g = c.g(rho);
    let energy = system.potential.k + scale * c.upsilon0 - scale / 4.0 * g * g;
    Ok(EnergyLevel {
        n,
        m,
        epsilon,
        energy,
        variant,
    })
}

/// Both estimates of the largest radial quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NMax {
    pub extremum_rule: f64,
    /// `−J̃ + √P₀ + √(P₀ − Υ₁)`; NaN when either radicand is negative.
    pub printed_rule: f64,
    pub printed_rule_real: bool,
}

pub fn n_max(coeffs: &SpectrumCoefficients) -> Result<NMax> {
    if coeffs.upsilon1 < 0.0 || coeffs.upsilon1.is_nan() {
        return Err(Error::NoBoundStates(format!(
            "Upsilon1 = {} is negative",
            coeffs.upsilon1
        )));
    }
    let extremum_rule = -coeffs.j_tilde + coeffs.upsilon1.sqrt();
    let r1 = coeffs.p0;
    let r2 = coeffs.p0 - coeffs.upsilon1;
    let printed_rule_real = r1 >= 0.0 && r2 >= 0.0;
    let printed_rule = if printed_rule_real {
        -coeffs.j_tilde + r1.sqrt() + r2.sqrt()
    } else {
        f64::NAN
    };
    Ok(NMax {
        extremum_rule,
        printed_rule,
        printed_rule_real,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{PotentialParams, UnitSystem};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn uniform_fixture_coefficients() {
        let s = fixtures::uniform();
        let d = s.dimensionless(1).unwrap();
        let c = coefficients(&d, &s).unwrap();
        assert!(close(c.j_tilde, 0.5 + 10f64.sqrt(), 1e-14));
        assert!(close(c.upsilon0, 0.75, 1e-14));
        assert!(close(c.upsilon1_printed, 6.25, 1e-14));
        assert!(close(c.upsilon1, 2.25, 1e-14));
        assert!(close(c.p1, 0.0625, 1e-15));
        assert!(close(c.p0, 0.1875, 1e-15));
        assert!(c.n_max_real < 0.0);
        assert_eq!(c.n_max, 0);
        assert_eq!(c.bound_count(), 0);
    }

    #[test]
    fn uniform_fixture_epsilon_with_printed_bracket() {
        let s = fixtures::uniform();
        let d = s.dimensionless(1).unwrap();
        let c = coefficients(&d, &s).unwrap();
        // g = (6.25 − J²)/J evaluated independently
        let j = 0.5 + 10f64.sqrt();
        let g = (6.25 - j * j) / j;
        assert!(close(g, -1.9556894164707004, 1e-13));
        let eps = epsilon_at(c.j_tilde, c.upsilon1_printed, &d);
        assert!(close(eps, 0.20618027342387713, 1e-13), "{eps}");
        let e = c.p0 - c.p1 * g * g;
        assert!(close(e, -0.05154506835596928, 1e-13));
    }

    #[test]
    fn zero_strength() {
        let mut p = PotentialParams::zero();
        p.alpha = 0.2;
        p.delta = 0.3;
        let u = UnitSystem::default();
        let s = System::new(p, crate::model::FieldConfig::off(&u), u);
        let d = s.dimensionless(0).unwrap();
        let c = coefficients(&d, &s).unwrap();
        assert_eq!(c.j_tilde, 0.5);
        assert_eq!(c.upsilon0, -0.25);
        assert_eq!(c.upsilon1, 0.25);
        assert_eq!(epsilon_nm(0, &c, &d).unwrap(), 0.25);
    }

    #[test]
    fn negative_j_radicand() {
        let mut p = PotentialParams::zero();
        p.a = -1.0;
        p.alpha = 0.5;
        let u = UnitSystem::default();
        let s = System::new(p, crate::model::FieldConfig::off(&u), u);
        match system_coefficients(&s, 0) {
            Err(Error::NoRealSolution { radicand, .. }) => assert_eq!(radicand, -2.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tau_only_moves_v4() {
        let s = fixtures::bound(0).with_tau(0.0);
        let t = s.with_tau(-1.0);
        let a = system_coefficients(&s, 0).unwrap();
        let b = system_coefficients(&t, 0).unwrap();
        let shift = s.units.mu * s.potential.d / (2.0 * s.units.hbar.powi(2) * s.potential.screening());
        assert_eq!(a.j_tilde, b.j_tilde);
        assert!(close(b.upsilon0 - a.upsilon0, shift, 1e-9));
        assert!(close(a.upsilon1 - b.upsilon1, shift, 1e-9));
    }

    #[test]
    fn n_max_rules() {
        let mut c = system_coefficients(&fixtures::uniform(), 1).unwrap();
        c.upsilon1 = 100.0;
        c.j_tilde = 3.0;
        assert_eq!(n_max(&c).unwrap().extremum_rule, 7.0);
        c.upsilon1 = 9.0;
        assert_eq!(n_max(&c).unwrap().extremum_rule, 0.0);
        c.upsilon1 = -1.0;
        assert!(matches!(n_max(&c), Err(Error::NoBoundStates(_))));
    }

    #[test]
    fn printed_rule_flags_non_real() {
        let c = system_coefficients(&fixtures::uniform(), 1).unwrap();
        // P₀ − Υ₁ = 0.1875 − 2.25 < 0
        let r = n_max(&c).unwrap();
        assert!(!r.printed_rule_real);
        assert!(r.printed_rule.is_nan());
    }

    #[test]
    fn coulomb_limit_printed() {
        let mut p = PotentialParams::zero();
        p.d = 2.0;
        p.alpha = 0.5e-4;
        p.delta = 0.5e-4;
        let u = UnitSystem::default();
        let s = System::new(p, crate::model::FieldConfig::off(&u), u);
        let e = energy(0, 0, &s, EnergyVariant::Printed).unwrap().energy;
        assert!(close(e, -4.0, 1e-3), "{e}");
        let r = energy(0, 0, &s, EnergyVariant::Rescaled).unwrap().energy;
        assert!(close(r, -8.0, 2e-3), "{r}");
    }

    #[test]
    fn energy_matches_epsilon_mapping() {
        for v in [EnergyVariant::Printed, EnergyVariant::Rescaled] {
            let s = fixtures::bound(2);
            let lvl = energy(1, -1, &s, v).unwrap();
            let w = s.potential.screening();
            let u = &s.units;
            let back = s.potential.k - v.scale() * u.hbar * u.hbar * w * w / u.mu * lvl.epsilon;
            assert!(close(lvl.energy, back, 1e-12 * lvl.energy.abs().max(1.0)));
        }
    }

    proptest::proptest! {
        #[test]
        fn k_shift(idx in 0usize..5, k in -10.0f64..10.0, n in 0u32..4, m in -1i32..=1) {
            let s = fixtures::bound(idx).with_k(0.0);
            let t = s.with_k(k);
            for v in [EnergyVariant::Printed, EnergyVariant::Rescaled] {
                let a = energy(n, m, &s, v).unwrap();
                let b = energy(n, m, &t, v).unwrap();
                proptest::prop_assert!((b.energy - a.energy - k).abs() <= 1e-12 * k.abs().max(1.0));
                proptest::prop_assert_eq!(a.epsilon, b.epsilon);
            }
        }

        #[test]
        fn mirror_symmetry_without_fields(idx in 0usize..5, n in 0u32..4, m in 1i32..4) {
            let s = fixtures::bound(idx).with_fields(0.0, 0.0);
            for v in [EnergyVariant::Printed, EnergyVariant::Rescaled] {
                let a = energy(n, m, &s, v).unwrap().energy;
                let b = energy(n, -m, &s, v).unwrap().energy;
                proptest::prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn tau_monotone() {
        for idx in 0..5 {
            let base = fixtures::bound(idx);
            let mut prev = f64::INFINITY;
            for tau in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                let s = base.with_tau(tau);
                let c = system_coefficients(&s, 0).unwrap();
                assert!(c.upsilon1 > c.j_tilde * c.j_tilde);
                let e = energy(0, 0, &s, EnergyVariant::Printed).unwrap().energy;
                assert!(e < prev, "fixture {idx} tau {tau}");
                prev = e;
            }
        }
    }
}

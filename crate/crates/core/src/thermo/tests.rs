use super::*;
use crate::fixtures;
use crate::model::{FieldConfig, PotentialParams, UnitSystem};

fn cfg(idx: usize, m: i32) -> ThermoConfig {
    ThermoConfig::new(fixtures::bound(idx), m)
}

fn integrand(p0: f64, p1: f64, upsilon1: f64, lo: f64, hi: f64) -> ThermoIntegrand {
    ThermoIntegrand {
        p0,
        p1,
        upsilon1,
        r0: upsilon1 * upsilon1 * p1,
        r1: -(2.0 * p1 * upsilon1 + p0),
        rho_lo: lo,
        rho_hi: hi,
        n_max: 0,
    }
}

#[test]
fn single_level() {
    let r = thermo_from_levels(2.0, &[0.7]).unwrap();
    assert!((r.z - (-1.4f64).exp()).abs() < 1e-15);
    assert!((r.u - 0.7).abs() < 1e-9);
    assert!(r.s.abs() < 1e-9);
    assert!(r.c.abs() < 1e-8);
    assert!((r.f - 0.7).abs() < 1e-15);
}

#[test]
fn two_level_heat_capacity() {
    let delta = 1.0;
    let mut beta = 0.01;
    while beta <= 10.0 {
        let r = thermo_from_levels(beta, &[0.0, delta]).unwrap();
        let x = beta * delta;
        let exact = x * x * x.exp() / (1.0 + x.exp()).powi(2);
        assert!((r.c - exact).abs() < 1e-6, "beta={beta}: {} vs {exact}", r.c);
        beta *= 1.25;
    }
}

#[test]
fn sum_small_beta_counts_levels() {
    let c = cfg(0, 0);
    let t = thermo_integrand(&c).unwrap();
    let z = partition_sum(1e-12, &c).unwrap();
    assert!((z - (t.n_max + 1) as f64).abs() < 1e-9);
}

#[test]
fn sum_matches_brute_force() {
    // w halved until the level count reaches six (n_max = 5)
    let mut s = fixtures::bound(0);
    s.potential.alpha = 0.0075;
    s.potential.delta = 0.0075;
    let c = ThermoConfig::new(s, 0);
    let t = thermo_integrand(&c).unwrap();
    assert_eq!(t.n_max, 5);
    let d = s.dimensionless(0).unwrap();
    let j = 0.5 + (0.25 + d.v0 + d.v1 + d.v5 + d.u0 + d.u1 + d.eta_m).sqrt();
    let up1 = d.v0 - d.v2 + d.v3 + d.v4 - d.v5 + d.u1 - d.eta_m;
    let w = s.potential.screening();
    let beta = 3.0;
    let brute: f64 = (0..=5)
        .map(|n| {
            let rho = n as f64 + j;
            let e = w * w * (d.eta_m - d.v4 + d.v5) - w * w / 4.0 * ((up1 - rho * rho) / rho).powi(2);
            (-beta * e).exp()
        })
        .sum();
    let z = partition_sum(beta, &c).unwrap();
    assert!((z - brute).abs() < 1e-13 * brute, "{z} {brute}");
}

#[test]
fn golden_canonical_integral() {
    // P₀ = 0, P₁ = 1, Υ₁ = 4 on [1, 3] at β = 1, reference by a 10⁶-point midpoint rule
    let t = integrand(0.0, 1.0, 4.0, 1.0, 3.0);
    let n = 1_000_000;
    let h = 2.0 / n as f64;
    let mid: f64 = (0..n)
        .map(|i| {
            let r = 1.0 + (i as f64 + 0.5) * h;
            let g = (4.0 - r * r) / r;
            (g * g).exp()
        })
        .sum::<f64>()
        * h;
    let q = quadrature_of(1.0, &t, Integrand::Canonical).unwrap();
    assert!((q - mid).abs() < 1e-9 * mid, "{q} {mid}");
}

#[test]
fn quadrature_limits() {
    let c = cfg(1, 0);
    let t = thermo_integrand(&c).unwrap();
    let z = partition_quadrature(1e-12, &c, Integrand::Canonical).unwrap();
    assert!((z.value - t.width()).abs() < 1e-9);
    let empty = integrand(0.0, 1.0, 4.0, 2.0, 2.0);
    assert_eq!(quadrature_of(1.0, &empty, Integrand::Canonical).unwrap(), 0.0);
}

#[test]
fn reciprocal_integrand_is_inverse_boltzmann() {
    let t = thermo_integrand(&cfg(2, 1)).unwrap();
    for r in [t.rho_lo, 0.5 * (t.rho_lo + t.rho_hi), t.rho_hi] {
        let lhs = t.p1 * r * r + t.r0 / (r * r) + t.r1;
        assert!((lhs + t.energy(r)).abs() < 1e-12);
    }
}

#[test]
fn corrected_closed_form_equals_canonical_quadrature() {
    for idx in 0..fixtures::BOUND_COUNT {
        let mut c = cfg(idx, 0);
        c.closed_form = ClosedForm::Corrected;
        for beta in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let q = partition_quadrature(beta, &c, Integrand::Canonical).unwrap().value;
            let z = partition_closed(beta, &c).unwrap();
            assert!((z.value.re - q).abs() < 1e-8 * q, "fixture {idx} beta {beta}: {} {q}", z.value.re);
            assert!(z.imaginary_residual <= 1e-10 * z.value.norm());
        }
    }
}

#[test]
fn gaussian_limit_against_real_erf() {
    // R₀ = 0 and a negative P₁ make both erf arguments real
    let t = integrand(0.3, -0.8, 0.0, 0.5, 2.5);
    let beta = 1.7;
    let z = closed::printed(beta, &t).unwrap();
    assert_eq!(z.im, 0.0);
    let f = |r: f64| (beta * t.r1 + beta * t.p1 * r * r).exp();
    let q = crate::quadrature::integrate(f, 0.5, 2.5, QUAD).unwrap().value;
    assert!((z.re - q).abs() < 1e-12 * q, "{} {q}", z.re);
    let a = (0.8 * beta).sqrt();
    let erf_diff = libm::erf(a * 2.5) - libm::erf(a * 0.5);
    let analytic = (beta * t.r1).exp() * std::f64::consts::PI.sqrt() / (2.0 * a) * erf_diff;
    assert!((z.re - analytic).abs() < 1e-13 * analytic);
}

#[test]
fn printed_closed_form_is_not_its_quadrature() {
    let c = cfg(0, 0);
    let z = partition_closed_form(1.0, &c, ClosedForm::Printed).unwrap();
    let q = partition_quadrature(1.0, &c, Integrand::Reciprocal).unwrap().value;
    assert!(z.imaginary_residual <= 1e-10 * z.value.norm());
    assert!((z.value.re - q).abs() > 1e-3 * q);
}

#[test]
fn free_energy_identity_and_positive_heat_capacity() {
    for idx in [0, 2, 4] {
        let c = cfg(idx, 1);
        for route in [Route::Sum, Route::Quadrature] {
            let mut beta = 0.01;
            while beta <= 10.0 {
                let r = thermo_props(beta, &c, route).unwrap();
                assert!((r.f - (r.u - r.s / beta)).abs() <= 1e-8 * r.f.abs().max(1e-300), "{route:?} {beta}");
                assert!(r.c >= 0.0, "fixture {idx} {route:?} beta={beta}: C={}", r.c);
                beta *= 2.0;
            }
        }
    }
}

#[test]
fn sum_monotone_in_beta() {
    let c = cfg(0, 0);
    let positive = ThermoConfig {
        system: c.system.with_k(10.0),
        ..c
    };
    let negative = c;
    assert!(sum_levels(&negative).unwrap().iter().all(|e| *e < 0.0));
    let mut prev = (0.0, f64::INFINITY);
    for beta in [0.1, 0.5, 1.0, 2.0, 4.0] {
        let up = partition_sum(beta, &negative).unwrap();
        let down = partition_sum(beta, &positive).unwrap();
        assert!(up > prev.0 && down < prev.1);
        prev = (up, down);
    }
}

#[test]
fn sum_and_integral_close_for_many_levels() {
    let mut s = fixtures::bound(0);
    s.potential.alpha = 0.0005;
    s.potential.delta = 0.0005;
    let c = ThermoConfig::new(s, 0);
    let t = thermo_integrand(&c).unwrap();
    assert!(t.n_max >= 20);
    for beta in [0.5, 1.0, 5.0] {
        let zs = partition_sum(beta, &c).unwrap();
        let zq = partition_quadrature(beta, &c, Integrand::Canonical).unwrap().value;
        assert!((zs - zq).abs() < 0.15 * zs, "{zs} {zq}");
    }
}

#[test]
fn frozen_field_gives_zero_magnetization() {
    let mut c = ThermoConfig::new(fixtures::magnetic_config().system().unwrap(), 1);
    c.field_coupling = false;
    for route in [Route::Sum, Route::Quadrature] {
        assert_eq!(magnetization(2.0, &c, route).unwrap().value, 0.0);
    }
}

#[test]
fn susceptibility_schemes_agree() {
    let rc = fixtures::magnetic_config();
    let c = ThermoConfig::new(rc.system().unwrap(), rc.run.m);
    let a = susceptibility(rc.run.beta, &c, Route::Quadrature).unwrap().value;
    let b = susceptibility_second_difference(rc.run.beta, &c, Route::Quadrature).unwrap().value;
    assert!((a - b).abs() <= 1e-4 * a.abs(), "{a} {b}");
}

#[test]
fn zero_field_uses_one_sided_differences() {
    let c = cfg(0, 0).with_b_field(0.0);
    let m = magnetization(1.0, &c, Route::Quadrature).unwrap();
    assert!(m.one_sided);
    let r = thermo_props(1.0, &c, Route::Quadrature).unwrap();
    assert!(r.one_sided_field);
}

#[test]
fn closed_route_rejects_nonpositive_z() {
    let mut p = PotentialParams::zero();
    p.alpha = 0.5;
    let u = UnitSystem::default();
    let s = System::new(p, FieldConfig::off(&u), u);
    assert!(thermo_props(1.0, &ThermoConfig::new(s, 0), Route::Closed).is_err());
}

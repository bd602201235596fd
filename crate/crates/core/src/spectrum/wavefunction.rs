use serde::Serialize;

use super::{coefficients, epsilon_nm};
use crate::error::{Error, Result};
use crate::model::{DimensionlessSet, System};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::hyp2f1_terminating;

/// Exponents of `R(h) ∝ h^H (1−h)^J F(h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavefunctionExponents {
    pub h_exp: f64,
    pub j_exp: f64,
}

/// `H = √(ε − v4 + v5 + η)`, `J = J̃`.
pub fn wavefunction_exponents(epsilon: f64, j_tilde: f64, d: &DimensionlessSet) -> Result<WavefunctionExponents> {
    let radicand = epsilon - d.v4 + d.v5 + d.eta_m;
    if !(radicand > 0.0) {
        return Err(Error::NonNormalizable(radicand));
    }
    Ok(WavefunctionExponents {
        h_exp: radicand.sqrt(),
        j_exp: j_tilde,
    })
}

/// Constants of `y'' = 2(a x^{N+1}/(1−b x^{N+2}) − (M+1)/x) y' − W x^N/(1−b x^{N+2}) y`
/// as identified for the hypergeometric radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AIMCanonicalForm {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "M")]
    pub m_const: f64,
    #[serde(rename = "N")]
    pub n_const: f64,
    #[serde(rename = "W")]
    pub w_const: f64,
    pub sigma: f64,
    pub t: f64,
}

impl AIMCanonicalForm {
    /// `σ = (2M+N+3)/(N+2)` from the stored `M`, `N`.
    pub fn sigma_from_constants(&self) -> f64 {
        (2.0 * self.m_const + self.n_const + 3.0) / (self.n_const + 2.0)
    }

    /// `t = ((2M+1)b + 2a)/((N+2)b)` from the stored constants.
    pub fn t_from_constants(&self) -> f64 {
        ((2.0 * self.m_const + 1.0) * self.b + 2.0 * self.a) / ((self.n_const + 2.0) * self.b)
    }

    /// Whether `σ` and `t` follow from `a, b, M, N` to `tol`.
    pub fn is_self_consistent(&self, tol: f64) -> bool {
        (self.sigma - self.sigma_from_constants()).abs() <= tol
            && (self.t - self.t_from_constants()).abs() <= tol
    }
}

/// The identification with `M = J − ½` as commonly quoted. `W = Q² − (H+J)²`
/// with `Q² = ε + v0 − v2 + v3 + u1`.
///
/// Matching the first-derivative coefficient instead requires `M = H − ½`,
/// which is the only choice for which [`AIMCanonicalForm::is_self_consistent`]
/// holds; see [`canonical_form_matched`].
pub fn canonical_form(ex: &WavefunctionExponents, epsilon: f64, d: &DimensionlessSet) -> AIMCanonicalForm {
    let (h, j) = (ex.h_exp, ex.j_exp);
    let q2 = epsilon + d.v0 - d.v2 + d.v3 + d.u1;
    AIMCanonicalForm {
        a: j,
        b: 1.0,
        m_const: j - 0.5,
        n_const: -1.0,
        w_const: q2 - (h + j) * (h + j),
        sigma: 2.0 * h + 1.0,
        t: 2.0 * (h + j),
    }
}

/// As [`canonical_form`] but with `M = H − ½`.
pub fn canonical_form_matched(ex: &WavefunctionExponents, epsilon: f64, d: &DimensionlessSet) -> AIMCanonicalForm {
    AIMCanonicalForm {
        m_const: ex.h_exp - 0.5,
        ..canonical_form(ex, epsilon, d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialWavefunction {
    pub n: u32,
    pub m: i32,
    pub epsilon: f64,
    pub exponents: WavefunctionExponents,
    /// Constant multiplying `h^H (1−h)^J ₂F₁(…)` so that `∫ R² dr = 1`.
    pub normalization: f64,
    pub samples: Vec<(f64, f64)>,
    /// `n` lies above the bound range of the closed-form spectrum.
    pub beyond_n_max: bool,
}

struct Profile {
    n: u32,
    w: f64,
    h_exp: f64,
    j_exp: f64,
    b: f64,
    c: f64,
}

impl Profile {
    fn eval(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let x = 2.0 * self.w * r;
        let h = (-x).exp();
        let one_minus = -(-x).exp_m1();
        let envelope = (-self.h_exp * x + self.j_exp * one_minus.ln()).exp();
        let poly = hyp2f1_terminating(self.n, self.b, self.c, h).expect("c = 2H+1 > 1 has no poles");
        envelope * poly
    }
}

/// Radial function of level `(n, m)` sampled at `r_grid`.
///
/// `∫₀^∞ R² dr` is evaluated by adaptive quadrature on `[0, R]` with `R`
/// doubled from the largest grid point (or `1/w`) until the added tail
/// contributes less than `1e-8` of the total.
pub fn radial_wavefunction(n: u32, m: i32, system: &System, r_grid: &[f64]) -> Result<RadialWavefunction> {
    system.validate()?;
    let d = system.dimensionless(m)?;
    let c = coefficients(&d, system)?;
    let epsilon = epsilon_nm(n, &c, &d)?;
    let ex = wavefunction_exponents(epsilon, c.j_tilde, &d)?;
    if let Some(bad) = r_grid.iter().find(|r| !(**r >= 0.0) || !r.is_finite()) {
        return Err(Error::domain(format!("grid radius {bad} is not a finite non-negative number")));
    }
    let w = system.potential.screening();
    let profile = Profile {
        n,
        w,
        h_exp: ex.h_exp,
        j_exp: ex.j_exp,
        b: 2.0 * (ex.h_exp + ex.j_exp) + n as f64,
        c: 2.0 * ex.h_exp + 1.0,
    };

    let opts = QuadOptions {
        rel_tol: 1e-11,
        abs_tol: 0.0,
        max_intervals: 20_000,
    };
    let sq = |r: f64| {
        let v = profile.eval(r);
        v * v
    };
    let start = r_grid.iter().cloned().fold(1.0 / w, f64::max);
    let mut upper = start;
    let mut total = integrate(sq, 0.0, upper, opts)?.value;
    loop {
        let tail = integrate(sq, upper, 2.0 * upper, opts)?.value;
        total += tail;
        upper *= 2.0;
        if tail < 1e-8 * total || upper > 1e6 * start {
            break;
        }
    }
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::NonNormalizable(total));
    }
    let normalization = 1.0 / total.sqrt();
    let samples = r_grid.iter().map(|&r| (r, normalization * profile.eval(r))).collect();
    Ok(RadialWavefunction {
        n,
        m,
        epsilon,
        exponents: ex,
        normalization,
        samples,
        beyond_n_max: !c.is_bound(n),
    })
}

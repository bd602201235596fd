use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

/// Real part at or above which the continued fraction for `erfc` is used.
const CF_SWITCH: f64 = 5.0;

/// Error function of a complex argument.
///
/// For `Re z < 5` this sums the rapidly convergent series of Abramowitz and
/// Stegun 7.1.29, whose truncation error is of order `1e-16 |erf z|` and which
/// keeps both components free of cancellation near the axes. For `Re z ≥ 5`
/// `erfc` comes from its Laplace continued fraction. Negative real parts use
/// `erf(−z) = −erf(z)`. Results overflow to infinity once `Im(z)² − Re(z)²`
/// exceeds roughly 709.
pub fn erf_complex(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("erf of non-finite argument {z}")));
    }
    if z.re < 0.0 {
        return Ok(-erf_right(-z));
    }
    Ok(erf_right(z))
}

fn erf_right(z: Complex64) -> Complex64 {
    if z.re >= CF_SWITCH {
        Complex64::new(1.0, 0.0) - erfc_continued_fraction(z)
    } else {
        erf_series(z.re, z.im)
    }
}

fn erf_series(x: f64, y: f64) -> Complex64 {
    let ex2 = (-x * x).exp();
    let two_xy = 2.0 * x * y;
    let (sin2, cos2) = two_xy.sin_cos();

    let mut re = libm::erf(x);
    let mut im;
    if x == 0.0 {
        im = y / PI;
    } else {
        let sxy = (x * y).sin();
        re += ex2 * 2.0 * sxy * sxy / (2.0 * PI * x);
        im = ex2 * sin2 / (2.0 * PI * x);
    }

    let ya = y.abs();
    let sign = if y < 0.0 { -1.0 } else { 1.0 };
    let terms = (2.0 * ya).ceil() as usize + 15;
    let (mut sr, mut si) = (0.0, 0.0);
    for n in 1..=terms {
        let nf = n as f64;
        let base = -nf * nf / 4.0 - x * x;
        let grow = (nf * ya + base).exp();
        let decay = (-nf * ya + base).exp();
        let en = base.exp();
        let ch = 0.5 * (grow + decay);
        let sh = 0.5 * (grow - decay) * sign;
        let denom = nf * nf + 4.0 * x * x;
        sr += (2.0 * x * en - 2.0 * x * ch * cos2 + nf * sh * sin2) / denom;
        si += (2.0 * x * ch * sin2 + nf * sh * cos2) / denom;
    }
    re += 2.0 / PI * sr;
    im += 2.0 / PI * si;
    Complex64::new(re, im)
}

/// `erfc(z) = e^{−z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …))))`,
/// evaluated with the modified Lentz algorithm. Requires `Re z > 0`.
fn erfc_continued_fraction(z: Complex64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..10_000 {
        let a = k as f64 / 2.0;
        d = z + d * a;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        d = d.inv();
        c = z + c.inv() * a;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / (PI.sqrt() * f)
}

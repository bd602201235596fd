//! Asymptotic iteration on truncated Taylor series about an evaluation point.

use serde::Serialize;
use twofloat::TwoFloat;

use super::{coefficients, epsilon_nm};
use crate::error::{Error, Result};
use crate::model::{DimensionlessSet, System};
use crate::roots::brent;

/// Values of the iteration functions at `h₀` after `k` steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AimState {
    pub k: usize,
    pub lambda_k: f64,
    pub s_k: f64,
    /// `λ_k s_{k+1} − λ_{k+1} s_k`.
    pub delta_k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AimSolution {
    pub epsilon: f64,
    /// Iteration index at which successive roots agreed.
    pub k: usize,
    pub bracket: (f64, f64),
}

const SCAN_HALF_WIDTH: f64 = 5.0;
const SCAN_STEPS: usize = 200;
/// Relative agreement of successive roots; δ_k loses about one digit per
/// iteration to cancellation, so an absolute test fails for large |ε|.
const ROOT_AGREEMENT: f64 = 1e-10;

/// Double-double scalar: `δ_k` is a difference of products that grow like
/// `k!/h₀^k`, so double precision leaves no significant digits by `k ≈ 5`.
type Dd = TwoFloat;

fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

fn derivative(c: &[Dd]) -> Vec<Dd> {
    (1..c.len()).map(|j| c[j] * j as f64).collect()
}

/// Cauchy product truncated to the shorter length.
fn product(a: &[Dd], b: &[Dd]) -> Vec<Dd> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|j| (0..=j).fold(dd(0.0), |acc, i| acc + a[i] * b[j - i]))
        .collect()
}

/// Taylor coefficients of `λ₀` and `s₀` about `h₀` to degree `degree`.
fn seeds(h: Dd, j: f64, s_const: Dd, h0: f64, degree: usize) -> (Vec<Dd>, Vec<Dd>) {
    // 1/(h(1−h)) = 1/h + 1/(1−h)
    let mut inv = vec![dd(0.0); degree + 1];
    let (ip, iq) = (dd(1.0) / h0, dd(1.0) / (dd(1.0) - h0));
    let (mut p, mut q) = (ip, iq);
    for (k, c) in inv.iter_mut().enumerate() {
        *c = if k % 2 == 0 { p + q } else { q - p };
        p *= ip;
        q *= iq;
    }
    let slope = h * 2.0 + 2.0 * j + 1.0;
    let mut num = vec![dd(0.0); degree + 1];
    num[0] = slope * h0 - (h * 2.0 + 1.0);
    if degree >= 1 {
        num[1] = slope;
    }
    let lambda0 = product(&num, &inv);
    let s0 = inv.iter().map(|&c| s_const * c).collect();
    (lambda0, s0)
}

/// Iterates to `k_max + 1` and returns `(λ_k(h₀), s_k(h₀))` for `k = 0..=k_max+1`.
fn iterate(h: Dd, j: f64, s_const: Dd, h0: f64, k_max: usize) -> Vec<(Dd, Dd)> {
    let degree = k_max + 1;
    let (l0, s0) = seeds(h, j, s_const, h0, degree);
    let mut out = Vec::with_capacity(k_max + 2);
    out.push((l0[0], s0[0]));
    let (mut l, mut s) = (l0.clone(), s0.clone());
    for _ in 1..=degree {
        let dl = derivative(&l);
        let ds = derivative(&s);
        let l0l = product(&l0, &l);
        let s0l = product(&s0, &l);
        let len = dl.len();
        let nl: Vec<Dd> = (0..len).map(|i| dl[i] + s[i] + l0l[i]).collect();
        let ns: Vec<Dd> = (0..len).map(|i| ds[i] + s0l[i]).collect();
        out.push((nl[0], ns[0]));
        l = nl;
        s = ns;
    }
    out
}

/// `H` and `(H + J)² − Q²`, or `None` when the `H` radicand is negative.
fn exponents(epsilon: f64, j: f64, d: &DimensionlessSet) -> Option<(Dd, Dd)> {
    let radicand = dd(epsilon) - d.v4 + d.v5 + d.eta_m;
    if radicand < 0.0 {
        return None;
    }
    let h = radicand.sqrt();
    let q2 = dd(epsilon) + d.v0 - d.v2 + d.v3 + d.u1;
    let hj = h + j;
    Some((h, hj * hj - q2))
}

/// Iteration states at `h₀` for trial eigenvalue `ε`; `None` when the `H`
/// radicand is negative.
pub fn aim_states(epsilon: f64, j_tilde: f64, d: &DimensionlessSet, h0: f64, k_max: usize) -> Option<Vec<AimState>> {
    let (h, s_const) = exponents(epsilon, j_tilde, d)?;
    let v = iterate(h, j_tilde, s_const, h0, k_max);
    Some(
        (0..=k_max)
            .map(|k| AimState {
                k,
                lambda_k: v[k].0.into(),
                s_k: v[k].1.into(),
                delta_k: (v[k].0 * v[k + 1].1 - v[k + 1].0 * v[k].1).into(),
            })
            .collect(),
    )
}

/// `δ_k(h₀)` at trial eigenvalue `ε`.
pub fn aim_delta(k: usize, epsilon: f64, j_tilde: f64, d: &DimensionlessSet, h0: f64) -> Option<f64> {
    aim_states(epsilon, j_tilde, d, h0, k).map(|s| s[k].delta_k)
}

/// Eigenvalue `ε` of level `n` from the AIM quantization condition.
///
/// The scan window is centered on the closed-form value; only the bracket is
/// seeded from it, the root itself comes from `δ_k = 0`.
pub fn aim_solve(n: u32, m: i32, system: &System, h0: f64, k_max: usize) -> Result<AimSolution> {
    if !(h0 > 0.0 && h0 < 1.0) {
        return Err(Error::config(format!("h0 must lie in (0, 1), got {h0}")));
    }
    let k_first = n as usize + 1;
    if k_max < n as usize + 2 {
        return Err(Error::config(format!("k_max must be at least n + 2 = {}", n + 2)));
    }
    system.validate()?;
    let d = system.dimensionless(m)?;
    let c = coefficients(&d, system)?;
    let center = epsilon_nm(n, &c, &d)?;
    let j = c.j_tilde;

    let mut previous: Option<f64> = None;
    let mut last_bracket = (center - SCAN_HALF_WIDTH, center + SCAN_HALF_WIDTH);
    for k in k_first..=k_max {
        let f = |e: f64| aim_delta(k, e, j, &d, h0);
        let bracket = scan(&f, center)?;
        last_bracket = bracket;
        let root = brent(|e| f(e).unwrap_or(f64::NAN), bracket.0, bracket.1, 1e-14, 200)?;
        if let Some(p) = previous {
            if (root - p).abs() < ROOT_AGREEMENT * root.abs().max(1.0) {
                return Ok(AimSolution {
                    epsilon: root,
                    k,
                    bracket,
                });
            }
        }
        previous = Some(root);
    }
    Err(Error::NoConvergence {
        iterations: k_max,
        lo: last_bracket.0,
        hi: last_bracket.1,
    })
}

/// Sign change of `f` nearest `center` on the uniform scan grid.
fn scan<F: Fn(f64) -> Option<f64>>(f: &F, center: f64) -> Result<(f64, f64)> {
    let lo = center - SCAN_HALF_WIDTH;
    let step = 2.0 * SCAN_HALF_WIDTH / SCAN_STEPS as f64;
    let pts: Vec<(f64, Option<f64>)> = (0..=SCAN_STEPS)
        .map(|i| {
            let e = lo + step * i as f64;
            (e, f(e))
        })
        .collect();
    let mut best: Option<(f64, f64)> = None;
    for w in pts.windows(2) {
        if let ((a, Some(fa)), (b, Some(fb))) = (w[0], w[1]) {
            if fa == 0.0 || fa.signum() != fb.signum() {
                let dist = (0.5 * (a + b) - center).abs();
                if best.is_none_or(|(x, y)| dist < (0.5 * (x + y) - center).abs()) {
                    best = Some((a, b));
                }
            }
        }
    }
    best.ok_or(Error::RootNotBracketed {
        lo,
        hi: center + SCAN_HALF_WIDTH,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn iteration_matches_direct_derivatives() {
        // λ₁ = λ₀' + s₀ + λ₀² checked against a closed-form derivative of λ₀
        let (h, j, q2, h0) = (3.0, 2.5, 40.0, 0.3);
        let v: Vec<(f64, f64)> = iterate(dd(h), j, dd((h + j).powi(2) - q2), h0, 2)
            .into_iter()
            .map(|(l, s)| (l.into(), s.into()))
            .collect();
        let a = 2.0 * h + 2.0 * j + 1.0;
        let b = 2.0 * h + 1.0;
        let den = h0 * (1.0 - h0);
        let l0 = (a * h0 - b) / den;
        let dl0 = (a * den - (a * h0 - b) * (1.0 - 2.0 * h0)) / (den * den);
        let s0 = ((h + j).powi(2) - q2) / den;
        assert!((v[0].0 - l0).abs() < 1e-12);
        assert!((v[0].1 - s0).abs() < 1e-12);
        let l1 = dl0 + s0 + l0 * l0;
        assert!((v[1].0 - l1).abs() < 1e-10 * l1.abs());
        assert!((v[1].1 - s0 * l0 - (-(s0 * (1.0 - 2.0 * h0) / den))).abs() < 1e-10 * (s0 * l0).abs());
    }

    #[test]
    fn matches_closed_form() {
        for s in fixtures::all_bound() {
            let d = s.dimensionless(0).unwrap();
            let c = coefficients(&d, &s).unwrap();
            for n in 0..=3 {
                let sol = aim_solve(n, 0, &s, 0.1, 30).unwrap();
                let exact = epsilon_nm(n, &c, &d).unwrap();
                assert!((sol.epsilon - exact).abs() < 1e-8, "n={n}: {} {exact}", sol.epsilon);
            }
        }
    }

    #[test]
    fn quantization_holds_at_root() {
        let s = fixtures::bound(2);
        let d = s.dimensionless(1).unwrap();
        let c = coefficients(&d, &s).unwrap();
        for n in 0..3 {
            let e = aim_solve(n, 1, &s, 0.3, 30).unwrap().epsilon;
            // H = Q − J − n, i.e. (H + J)² − Q² = −n(2H + 2J + n)
            let (h, w) = exponents(e, c.j_tilde, &d).unwrap();
            let (h, w): (f64, f64) = (h.into(), w.into());
            let nf = n as f64;
            assert!((w + nf * (2.0 * (h + c.j_tilde) + nf)).abs() < 1e-9, "n={n}: {w}");
        }
    }

    #[test]
    fn uniform_fixture_has_no_root() {
        let s = fixtures::uniform();
        assert!(matches!(aim_solve(0, 1, &s, 0.5, 10), Err(Error::RootNotBracketed { .. })));
    }

    #[test]
    fn argument_checks() {
        let s = fixtures::bound(0);
        assert!(aim_solve(0, 0, &s, 1.0, 10).is_err());
        assert!(aim_solve(3, 0, &s, 0.5, 4).is_err());
    }
}

//! Finite-difference eigensolver for the radial equation.
//!
//! Second-order central differences on a uniform grid with Dirichlet ends;
//! eigenvalues by Sturm-sequence bisection of the tridiagonal matrix, with
//! two levels of Richardson extrapolation in the grid spacing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{flux_ratio, System};
use crate::potential::{eval_effective, RadialForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OdeMode {
    /// Greene–Aldrich substituted operator, the one the closed form solves.
    Approximated,
    /// Exact `1/r` and `1/r²`.
    Exact,
}

#[derive(Debug, Clone, Copy)]
pub struct FdOptions {
    /// Relative change between successive extrapolated refinements.
    pub rel_tol: f64,
    /// Interior points on the coarsest grid.
    pub start_points: usize,
    /// Number of grid doublings allowed.
    pub max_doublings: usize,
    /// Box size in units of the slowest decay length `1/κ`.
    pub decay_lengths: f64,
    /// Initial box radius; refined from the coarse spectrum.
    pub initial_box: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions {
            rel_tol: 1e-8,
            start_points: 2000,
            max_doublings: 9,
            decay_lengths: 40.0,
            initial_box: 50.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdLevels {
    /// `(n, E)` in increasing order.
    pub levels: Vec<(u32, f64)>,
    pub requested: usize,
    /// Fewer than `requested` bound states were found below the threshold.
    pub shortfall: bool,
    pub threshold: f64,
    pub r_box: f64,
    pub points: usize,
    /// Largest relative change between the last two extrapolated grids.
    pub rel_change: f64,
}

struct Grid {
    diag: Vec<f64>,
    off2: f64,
    off: f64,
}

impl Grid {
    fn build<V: Fn(f64) -> f64>(v: &V, kinetic: f64, r_box: f64, points: usize) -> Grid {
        let dr = r_box / (points + 1) as f64;
        let t = kinetic / (dr * dr);
        let diag = (1..=points).map(|i| 2.0 * t + v(i as f64 * dr)).collect();
        Grid {
            diag,
            off2: t * t,
            off: t,
        }
    }

    /// Eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - self.off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + x.abs() + self.off);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn lower_bound(&self) -> f64 {
        self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * self.off
    }

    /// `k`-th eigenvalue (0-based) by bisection inside `[lo, hi]`.
    fn eigenvalue(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn lowest(&self, count: usize, threshold: f64) -> Vec<f64> {
        let available = self.count_below(threshold).min(count);
        let lo = self.lower_bound();
        (0..available).map(|k| self.eigenvalue(k, lo, threshold)).collect()
    }
}

/// Lowest `count` eigenvalues below `threshold` of `−kinetic·d²/dr² + v(r)` on `(0, ∞)`.
pub fn solve_radial<V: Fn(f64) -> f64>(
    v: V,
    kinetic: f64,
    threshold: f64,
    count: usize,
    opts: FdOptions,
) -> Result<FdLevels> {
    if count == 0 {
        return Err(Error::config("count must be at least 1"));
    }
    if !(kinetic > 0.0) {
        return Err(Error::config(format!("kinetic prefactor must be positive, got {kinetic}")));
    }
    let points0 = opts.start_points.max(16);

    // size the box from the decay of the least bound requested level
    let mut r_box = opts.initial_box;
    let mut found = 0;
    let mut stale = 0;
    for _ in 0..40 {
        let coarse = Grid::build(&v, kinetic, r_box, 2 * points0).lowest(count, threshold);
        if coarse.len() < count && stale < 6 {
            stale = if coarse.len() > found { 0 } else { stale + 1 };
            found = found.max(coarse.len());
            r_box *= 2.0;
            continue;
        }
        let Some(top) = coarse.last() else { break };
        let kappa = ((threshold - top) / kinetic).sqrt();
        let wanted = opts.decay_lengths / kappa;
        if wanted <= r_box * 1.05 {
            break;
        }
        r_box = wanted;
    }

    let mut table: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut best: Vec<f64> = Vec::new();
    let mut rel_change = f64::INFINITY;
    let mut points = points0;
    for level in 0..=opts.max_doublings {
        points = points0 << level;
        let e = Grid::build(&v, kinetic, r_box, points).lowest(count, threshold);
        let mut row = vec![e];
        if let Some(prev) = table.last() {
            let depth = prev.len().min(2);
            for j in 0..depth {
                let f = 4f64.powi(j as i32 + 1);
                let cur = &row[j];
                let old = &prev[j];
                let len = cur.len().min(old.len());
                let next: Vec<f64> = (0..len).map(|i| (f * cur[i] - old[i]) / (f - 1.0)).collect();
                row.push(next);
            }
        }
        let extrap = row.last().unwrap().clone();
        if row.len() == 3 && extrap.is_empty() {
            rel_change = 0.0;
        } else if row.len() == 3 && !best.is_empty() {
            let len = extrap.len().min(best.len());
            rel_change = (0..len)
                .map(|i| ((extrap[i] - best[i]) / extrap[i].abs().max(f64::MIN_POSITIVE)).abs())
                .fold(0.0, f64::max);
        }
        best = extrap;
        table.push(row);
        if rel_change < opts.rel_tol {
            break;
        }
    }
    if !(rel_change < opts.rel_tol) {
        return Err(Error::NoConvergence {
            iterations: opts.max_doublings,
            lo: rel_change,
            hi: opts.rel_tol,
        });
    }
    let levels = best
        .iter()
        .enumerate()
        .filter(|(_, e)| **e < threshold)
        .map(|(n, e)| (n as u32, *e))
        .collect::<Vec<_>>();
    Ok(FdLevels {
        shortfall: levels.len() < count,
        requested: count,
        levels,
        threshold,
        r_box,
        points,
        rel_change,
    })
}

/// Limit of the effective interaction as `r → ∞`.
pub fn asymptote(system: &System, m: i32, mode: OdeMode) -> Result<f64> {
    let p = &system.potential;
    let u = &system.units;
    let w = p.checked_screening()?;
    Ok(match mode {
        OdeMode::Exact => p.k,
        OdeMode::Approximated => {
            let xi = flux_ratio(system.fields.phi_ab, system.fields.phi0)?;
            let eta = (m as f64 + xi).powi(2) - 0.25;
            p.k + 2.0 * w * (-(p.d / 2.0) * (1.0 + p.tau) + 2.0 * p.g)
                + u.hbar * u.hbar * eta / (2.0 * u.mu) * 4.0 * w * w
        }
    })
}

/// Lowest `count` bound levels of the effective radial equation for `m`.
pub fn ode_eigensolve(system: &System, m: i32, mode: OdeMode, count: usize) -> Result<FdLevels> {
    ode_eigensolve_with(system, m, mode, count, FdOptions::default())
}

pub fn ode_eigensolve_with(
    system: &System,
    m: i32,
    mode: OdeMode,
    count: usize,
    opts: FdOptions,
) -> Result<FdLevels> {
    system.validate()?;
    let form = match mode {
        OdeMode::Approximated => RadialForm::GreeneAldrich,
        OdeMode::Exact => RadialForm::Exact,
    };
    let threshold = asymptote(system, m, mode)?;
    let kinetic = system.units.hbar * system.units.hbar / (2.0 * system.units.mu);
    let v = |r: f64| {
        eval_effective(r, system, m, form)
            .map(|t| t.total())
            .unwrap_or(f64::NAN)
    };
    let w = system.potential.screening();
    let opts = FdOptions {
        initial_box: opts.initial_box.max(1.0 / w).min(1e4),
        ..opts
    };
    solve_radial(v, kinetic, threshold, count, opts)
}

//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_intervals: 10_000,
        }
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Piece {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

/// `∫_a^b f` to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Quadrature> {
    adapt_pieces(&f, a, b, opts).map(|r| r.0)
}

fn adapt_pieces<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: QuadOptions) -> Result<(Quadrature, Vec<Piece>)> {
    if a == b {
        return Ok((
            Quadrature {
                value: 0.0,
                error: 0.0,
                intervals: 0,
            },
            Vec::new(),
        ));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("integration limits must be finite: [{a}, {b}]")));
    }
    let first = kronrod(f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        if !value.is_finite() {
            return Err(Error::Quadrature {
                tol: opts.rel_tol,
                estimate: value,
            });
        }
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            break;
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature {
                tol: target,
                estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.error == 0.0 {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot be split further in floating point; accept as is
            error -= worst.error;
            heap.push(Piece {
                error: 0.0,
                ..worst
            });
            continue;
        }
        let l = kronrod(f, worst.a, mid);
        let r = kronrod(f, mid, worst.b);
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
    // resum to shed the drift of the running updates
    let pieces = heap.into_vec();
    let v = pieces.iter().map(|p| p.value).sum();
    let e = pieces.iter().map(|p| p.error).sum();
    Ok((
        Quadrature {
            value: v,
            error: e,
            intervals: pieces.len(),
        },
        pieces,
    ))
}

/// Fixed composite rule: the panels an adaptive run settled on.
#[derive(Debug, Clone, PartialEq)]
pub struct Panels(Vec<(f64, f64)>);

impl Panels {
    /// Adapts on `f` and keeps the resulting subdivision.
    pub fn adapt<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<(Quadrature, Panels)> {
        let (q, pieces) = adapt_pieces(&f, a, b, opts)?;
        let mut bounds: Vec<(f64, f64)> = pieces.iter().map(|p| (p.a, p.b)).collect();
        bounds.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok((q, Panels(bounds)))
    }

    /// Applies the stored rule to another integrand. The result is a smooth
    /// function of any parameter `f` depends on smoothly.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.0.iter().map(|&(a, b)| kronrod(&f, a, b).value).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#![allow(dead_code)]

use iugehp::specfun::{erf_complex, hyp2f1_terminating, ComplexValue};

pub struct ErfPoint {
    pub z: ComplexValue,
    pub w: ComplexValue,
}

pub fn erf_oracle() -> Vec<ErfPoint> {
    let text = include_str!("../data/erf_oracle.csv");
    text.lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|s| s.parse().expect("oracle value")).collect();
            ErfPoint {
                z: ComplexValue::new(v[0], v[1]),
                w: ComplexValue::new(v[2], v[3]),
            }
        })
        .collect()
}

/// Largest `|erf(z) − w| / max(|w|, 1)` over the oracle table.
pub fn erf_worst() -> (f64, ComplexValue) {
    let mut worst = (0.0, ComplexValue::new(0.0, 0.0));
    for p in erf_oracle() {
        let v = erf_complex(p.z).expect("finite argument");
        let err = (v - p.w).norm() / p.w.norm().max(1.0);
        if err > worst.0 {
            worst = (err, p.z);
        }
    }
    worst
}

/// Three-term recurrence in the degree for `₂F₁(−j, b; c; x)`.
pub fn hyp2f1_recurrence(n: u32, b: f64, c: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 - b * x / c;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + c - (b + jf) * x) * cur + jf * (x - 1.0) * prev) / (c + jf);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Σ|term|` of the terminating series, the scale of its rounding error.
pub fn hyp2f1_abs_series(n: u32, b: f64, c: f64, x: f64) -> f64 {
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 0..n {
        let kf = k as f64;
        term *= ((kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * x).abs();
        sum += term;
    }
    sum
}

pub const HYP_CASES: [(f64, f64, f64); 6] = [
    (2.0, 1.5, 0.3),
    (7.3, 3.1, 0.9),
    (25.0, 11.0, 0.05),
    (4.4, 2.2, 0.5),
    (12.5, 5.0, 0.7),
    (3.0, 2.0, 0.99),
];

/// Largest scaled disagreement between summation and recurrence for `n ≤ 20`.
pub fn hyp2f1_worst() -> f64 {
    let mut worst: f64 = 0.0;
    for n in 0..=20u32 {
        for &(b, c, x) in &HYP_CASES {
            let sum = hyp2f1_terminating(n, b, c, x).expect("no pole");
            let rec = hyp2f1_recurrence(n, b, c, x);
            let scale = hyp2f1_abs_series(n, b, c, x).max(1.0);
            worst = worst.max((sum - rec).abs() / scale);
        }
    }
    worst
}

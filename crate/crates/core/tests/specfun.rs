mod common;

use iugehp::specfun::{erf_complex, ComplexValue};

#[test]
fn erf_matches_high_precision_table() {
    let pts = common::erf_oracle();
    assert_eq!(pts.len(), 1000);
    assert!(pts.iter().all(|p| p.z.norm() <= 10.0));
    let (worst, at) = common::erf_worst();
    assert!(worst <= 1e-10, "worst {worst:e} at {at}");
}

#[test]
fn erf_table_spans_both_branches() {
    let pts = common::erf_oracle();
    assert!(pts.iter().any(|p| p.z.re >= 5.0));
    assert!(pts.iter().any(|p| p.z.re.abs() < 5.0 && p.z.im.abs() > 5.0));
}

#[test]
fn erf_reflection_across_the_table() {
    for p in common::erf_oracle() {
        let v = erf_complex(p.z).unwrap();
        let r = erf_complex(ComplexValue::new(-p.z.re, p.z.im)).unwrap();
        // erf(−z̄) = −conj(erf z)
        assert!((r + v.conj()).norm() <= 1e-12 * v.norm().max(1.0), "{}", p.z);
    }
}

#[test]
fn hyp2f1_matches_recurrence() {
    let worst = common::hyp2f1_worst();
    assert!(worst <= 1e-10, "{worst:e}");
}

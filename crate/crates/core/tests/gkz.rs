use openmirror::catalog;
use openmirror::gkz::{build_operator, check_annihilation};
use openmirror::{rat, LogSeries, TruncatedSeries};

#[test]
fn annihilation_on_every_phase() {
    for (g, b) in catalog::all_phases(4) {
        let grading = g.default_grading(Some(&b)).unwrap();
        for f in [-2, 1] {
            let report = check_annihilation(&g, &b, f, &grading, 5).unwrap();
            assert!(report.passed(), "{} {} f={f}: {}", g.name, b.label, report.residuals[0]);
            assert_eq!(report.checked, (g.k() + 1) * (g.k() + 2));
        }
    }
}

#[test]
fn factor_counts() {
    for (g, b) in catalog::all_phases(4) {
        for f in -2..=2 {
            for a in 0..=g.k() {
                let op = build_operator(&g, &b, f, a);
                let mut row = if a == 0 { b.l0(g.r(), f) } else { g.charge[a - 1].clone() };
                if a == 0 {
                    row.extend([1, -1]);
                }
                let pos: i64 = row.iter().filter(|&&l| l > 0).sum();
                let neg: i64 = -row.iter().filter(|&&l| l < 0).sum::<i64>();
                assert_eq!(op.positive_part.len() as i64, pos);
                assert_eq!(op.negative_part.len() as i64, neg);
            }
        }
    }
}

#[test]
fn operators_are_linear() {
    let (g, b) = catalog::phase("KF0", "II").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    let x = LogSeries::from_series(TruncatedSeries::variable(grading.clone(), 6, 1))
        .add(&LogSeries::log_var(grading.clone(), 6, 2))
        .unwrap();
    let y = LogSeries::from_series(TruncatedSeries::variable(grading.clone(), 6, 0).mul(&TruncatedSeries::variable(grading.clone(), 6, 2)).unwrap());
    for a in 0..=g.k() {
        let op = build_operator(&g, &b, -1, a);
        let lhs = op.apply(&x.scale(&rat(3)).add(&y).unwrap()).unwrap();
        let rhs = op.apply(&x).unwrap().scale(&rat(3)).add(&op.apply(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

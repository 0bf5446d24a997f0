//! Extended GKZ operators and their action on mirror-map periods.

use std::fmt;

use crate::error::Result;
use crate::mirror::corrections;
use crate::series::{ExtExponent, Grading, LogSeries};
use crate::toric::{BraneSpec, ToricCY3};
use crate::{rat, Rational};

/// `sum_b coeffs[b] theta_b - shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub coeffs: Vec<i64>,
    pub shift: i64,
}

impl LinearFactor {
    pub fn apply(&self, s: &LogSeries) -> Result<LogSeries> {
        let mut out = s.scale(&rat(-self.shift));
        for (b, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(&s.theta(b).scale(&rat(c)))?;
            }
        }
        Ok(out)
    }
}

/// `prod(positive_part) - q_a prod(negative_part)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKZOperator {
    pub a: usize,
    pub positive_part: Vec<LinearFactor>,
    pub negative_part: Vec<LinearFactor>,
}

/// Rows of the extended charge matrix: `(l0, 1, -1)` then `(l^(a), 0, 0)`.
pub fn extended_charges(g: &ToricCY3, b: &BraneSpec, f: i64) -> Vec<Vec<i64>> {
    let mut rows = Vec::with_capacity(g.k() + 1);
    let mut l0 = b.l0(g.r(), f);
    l0.extend([1, -1]);
    rows.push(l0);
    for row in &g.charge {
        let mut l = row.clone();
        l.extend([0, 0]);
        rows.push(l);
    }
    rows
}

pub fn build_operator(g: &ToricCY3, b: &BraneSpec, f: i64, a: usize) -> GKZOperator {
    let rows = extended_charges(g, b, f);
    let mut positive_part = Vec::new();
    let mut negative_part = Vec::new();
    for i in 0..rows[0].len() {
        let coeffs: Vec<i64> = rows.iter().map(|row| row[i]).collect();
        let l = rows[a][i];
        let part = if l > 0 { &mut positive_part } else { &mut negative_part };
        for shift in 0..l.abs() {
            part.push(LinearFactor { coeffs: coeffs.clone(), shift });
        }
    }
    GKZOperator { a, positive_part, negative_part }
}

impl GKZOperator {
    fn product(factors: &[LinearFactor], s: &LogSeries) -> Result<LogSeries> {
        factors.iter().try_fold(s.clone(), |acc, fac| fac.apply(&acc))
    }

    /// Applies the operator; the result is reliable up to `order - grade(q_a)`.
    pub fn apply(&self, s: &LogSeries) -> Result<LogSeries> {
        let pos = Self::product(&self.positive_part, s)?;
        let neg = Self::product(&self.negative_part, s)?;
        let qa = ExtExponent::unit(self.a, s.grading().k());
        let cut = s.order() - s.grading().grade(&qa);
        Ok(pos.sub(&neg.mul_monomial(&qa, &rat(1)))?.truncate(cut))
    }
}

/// A nonzero coefficient left by `D_b` on a period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    /// `None` for the constant period, `Some(a)` for `log q_a + S_a`.
    pub period: Option<usize>,
    pub operator: usize,
    pub log_key: Vec<u32>,
    pub monomial: ExtExponent,
    pub value: Rational,
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let period = match self.period {
            None => "1".to_string(),
            Some(a) => format!("log q{a} + S{a}"),
        };
        write!(
            f,
            "D{} on {period}: coefficient {} at {} (log powers {:?})",
            self.operator, self.value, self.monomial, self.log_key
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub checked: usize,
    pub residuals: Vec<Residual>,
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Checks that every `D_b` kills `1` and every `log q_a + S_a`.
pub fn check_annihilation(
    g: &ToricCY3,
    b: &BraneSpec,
    f: i64,
    grading: &Grading,
    order: i64,
) -> Result<AnnihilationReport> {
    let s = corrections(g, b, f, grading, order)?;
    let mut periods = vec![(None, LogSeries::from_series(crate::TruncatedSeries::one(grading.clone(), order)))];
    for (a, sa) in s.iter().enumerate() {
        let p = LogSeries::log_var(grading.clone(), order, a).add(&LogSeries::from_series(sa.clone()))?;
        periods.push((Some(a), p));
    }
    let mut report = AnnihilationReport::default();
    for op_index in 0..=g.k() {
        let op = build_operator(g, b, f, op_index);
        for (period, p) in &periods {
            report.checked += 1;
            let out = op.apply(p)?;
            for (key, series) in out.terms() {
                for (e, c) in series.terms() {
                    report.residuals.push(Residual {
                        period: *period,
                        operator: op_index,
                        log_key: key.clone(),
                        monomial: e.clone(),
                        value: c.clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::TruncatedSeries;

    #[test]
    fn conifold_operator_shape() {
        let (g, b) = catalog::phase("conifold", "I").unwrap();
        let op = build_operator(&g, &b, 0, 1);
        assert_eq!(op.positive_part.len(), 2);
        assert_eq!(op.negative_part.len(), 2);
        let op0 = build_operator(&g, &b, 0, 0);
        assert!(op0
            .positive_part
            .contains(&LinearFactor { coeffs: vec![1, 0], shift: 0 }));
        assert!(op0
            .negative_part
            .contains(&LinearFactor { coeffs: vec![-1, 0], shift: 0 }));
    }

    #[test]
    fn kp2_negative_shifts() {
        let (g, b) = catalog::phase("KP2", "I").unwrap();
        let op = build_operator(&g, &b, 0, 1);
        let shifts: Vec<i64> = op
            .negative_part
            .iter()
            .filter(|fac| fac.coeffs[1] == -3)
            .map(|fac| fac.shift)
            .collect();
        assert_eq!(shifts, vec![0, 1, 2]);
    }

    #[test]
    fn kills_constants_not_monomials() {
        let (g, b) = catalog::phase("KF0", "I").unwrap();
        let grading = g.default_grading(Some(&b)).unwrap();
        let one = LogSeries::from_series(TruncatedSeries::one(grading.clone(), 6));
        for a in 0..=g.k() {
            let op = build_operator(&g, &b, 1, a);
            assert!(op.apply(&one).unwrap().is_zero());
        }
        let q1 = LogSeries::from_series(TruncatedSeries::variable(grading.clone(), 6, 1));
        assert!(!build_operator(&g, &b, 1, 1).apply(&q1).unwrap().is_zero());
    }

    #[test]
    fn conifold_kills_log() {
        let (g, b) = catalog::phase("conifold", "I").unwrap();
        let grading = g.default_grading(Some(&b)).unwrap();
        let log = LogSeries::log_var(grading, 6, 1);
        assert!(build_operator(&g, &b, 0, 1).apply(&log).unwrap().is_zero());
    }

    #[test]
    fn annihilation_small_geometries() {
        for (geom, label) in [("conifold", "I"), ("KP2", "I"), ("KF0", "I")] {
            let (g, b) = catalog::phase(geom, label).unwrap();
            let grading = g.default_grading(Some(&b)).unwrap();
            let report = check_annihilation(&g, &b, 1, &grading, 5).unwrap();
            assert!(report.passed(), "{geom}: {}", report.residuals[0]);
        }
    }
}

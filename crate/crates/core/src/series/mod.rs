//! Exact truncated multivariate series.

mod exponent;
mod log;
mod truncated;

pub use exponent::{ExtExponent, Grading};
pub use log::LogSeries;
pub use truncated::TruncatedSeries;

use crate::error::{Error, Result};

/// Inverts `Q_a = q_a exp(S_a(q))` for corrections `S_0..S_k` in the closed variables.
///
/// Returns `q_a(Q) = Q_a exp(-S_a(q(Q)))`, obtained by fixed-point iteration; each pass
/// fixes at least one more grade.
pub fn invert_diagonal_map(corrections: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    let Some(first) = corrections.first() else {
        return Err(Error::Domain("no correction series given".into()));
    };
    let grading = first.grading().clone();
    let k = grading.k();
    if corrections.len() != k + 1 {
        return Err(Error::Domain(format!(
            "expected {} correction series, got {}",
            k + 1,
            corrections.len()
        )));
    }
    let order = corrections.iter().map(TruncatedSeries::order).min().unwrap_or(0);
    for (a, s) in corrections.iter().enumerate() {
        if s.grading() != &grading {
            return Err(Error::GradingMismatch(
                grading.weights().to_vec(),
                s.grading().weights().to_vec(),
            ));
        }
        if s.terms().any(|(e, _)| e.w != 0) {
            return Err(Error::Domain(format!("correction S{a} depends on q0")));
        }
        if s.min_grade().is_some_and(|g| g <= 0) {
            return Err(Error::Domain(format!("correction S{a} has a grade-0 term")));
        }
    }
    let logs = inverse_log_ratios(corrections, &grading, order)?;
    (0..=k)
        .map(|a| {
            TruncatedSeries::variable(grading.clone(), order, a).mul(&logs[a].neg().exp()?)
        })
        .collect()
}

/// `T_a = S_a(q(Q))`, so that `q_a = Q_a exp(-T_a(Q))`.
///
/// Iterates `T_a = S_a(Q exp(-T))`. The corrections have positive grade, so a `T` exact
/// to grade `n - 1` yields one exact to grade `n`; round `n` works at order `n`.
pub fn inverse_log_ratios(
    corrections: &[TruncatedSeries],
    grading: &Grading,
    order: i64,
) -> Result<Vec<TruncatedSeries>> {
    let mut t: Vec<TruncatedSeries> = corrections
        .iter()
        .map(|_| TruncatedSeries::zero(grading.clone(), 0))
        .collect();
    for n in 1..=order.max(0) {
        let units: Vec<TruncatedSeries> = t.iter().map(|ta| ta.neg().exp()).collect::<Result<_>>()?;
        let s: Vec<TruncatedSeries> = corrections.iter().map(|s| s.truncate(n)).collect();
        t = TruncatedSeries::rescale_all(&s, &units)?;
        if let Some(bad) = t.iter().find(|ta| ta.order() < n) {
            return Err(Error::Internal(format!(
                "mirror map inversion reached order {} < {n}",
                bad.order()
            )));
        }
    }
    Ok(t
        .into_iter()
        .map(|ta| ta.with_order(order).truncate(order))
        .collect())
}

pub fn forward_diagonal_map(corrections: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    corrections
        .iter()
        .enumerate()
        .map(|(a, s)| {
            let x = TruncatedSeries::variable(s.grading().clone(), s.order(), a);
            x.mul(&s.exp()?)
        })
        .collect()
}

#[cfg(test)]
mod tests;

//! Open and closed mirror maps and disk invariants in flat coordinates.

use num_traits::{One, Zero};

use crate::bmodel::{factorial, w0_series};
use crate::error::{Error, Result};
use crate::series::{forward_diagonal_map, inverse_log_ratios, ExtExponent, Grading, TruncatedSeries};
use crate::toric::{BraneSpec, ToricCY3};
use crate::{rat, Rational};

/// `E_{i0}(beta)`: nonzero only when `i0` is the single ray pairing negatively with `beta`.
pub fn e_coeff(g: &ToricCY3, i0: usize, beta: &[i64]) -> Result<Rational> {
    if beta.iter().all(|&x| x == 0) {
        return Err(Error::Domain("E coefficient needs a nonzero class".into()));
    }
    let c0 = g.pairing(beta, i0)?;
    if c0 >= 0 {
        return Ok(Rational::zero());
    }
    let mut den = Rational::one();
    for (idx, c) in g.pairings(beta).into_iter().enumerate() {
        if idx + 1 == i0 {
            continue;
        }
        if c < 0 {
            return Ok(Rational::zero());
        }
        den *= factorial(c);
    }
    let n = -c0 - 1;
    let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
    Ok(sign * factorial(n) / den)
}

/// `A_i(q) = sum_{beta > 0} E_i(beta) q^beta`.
pub fn a_series(g: &ToricCY3, i: usize, grading: &Grading, order: i64) -> Result<TruncatedSeries> {
    let classes = g.enumerate_effective(grading, order.max(0))?;
    a_from_classes(g, i, &classes, grading, order)
}

fn a_from_classes(
    g: &ToricCY3,
    i: usize,
    classes: &[Vec<i64>],
    grading: &Grading,
    order: i64,
) -> Result<TruncatedSeries> {
    let mut terms = Vec::new();
    for beta in classes {
        if beta.iter().all(|&x| x == 0) {
            continue;
        }
        terms.push((ExtExponent::closed(beta.clone()), e_coeff(g, i, beta)?));
    }
    Ok(TruncatedSeries::from_terms(grading.clone(), order, terms))
}

/// `Q_a = q_a exp(S_a(q))` for `a = 0..k`, together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorMap {
    /// `S_0..S_k`; `S_0` is the open correction.
    pub corrections: Vec<TruncatedSeries>,
    /// `q_a(Q)`.
    pub inverse: Vec<TruncatedSeries>,
    /// `q_a(Q) / Q_a`.
    pub inverse_units: Vec<TruncatedSeries>,
}

impl MirrorMap {
    /// `Q_a(q)`.
    pub fn forward(&self) -> Result<Vec<TruncatedSeries>> {
        forward_diagonal_map(&self.corrections)
    }

    pub fn is_identity(&self) -> bool {
        self.corrections.iter().all(TruncatedSeries::is_zero)
    }
}

/// Corrections `S_a = sum_i l_i^(a) A_i`, with `l^(0)` the open charge vector.
pub fn corrections(
    g: &ToricCY3,
    b: &BraneSpec,
    f: i64,
    grading: &Grading,
    order: i64,
) -> Result<Vec<TruncatedSeries>> {
    let classes = g.enumerate_effective(grading, order.max(0))?;
    let a: Vec<TruncatedSeries> = (1..=g.r())
        .map(|i| a_from_classes(g, i, &classes, grading, order))
        .collect::<Result<_>>()?;
    let mut rows = vec![b.l0(g.r(), f)];
    rows.extend(g.charge.iter().cloned());
    rows.iter()
        .map(|row| {
            row.iter().zip(&a).try_fold(
                TruncatedSeries::zero(grading.clone(), order),
                |acc, (&l, ai)| acc.add(&ai.scale(&rat(l))),
            )
        })
        .collect()
}

pub fn build_mirror_map(
    g: &ToricCY3,
    b: &BraneSpec,
    f: i64,
    grading: &Grading,
    order: i64,
) -> Result<MirrorMap> {
    let corrections = corrections(g, b, f, grading, order)?;
    let inverse_units: Vec<TruncatedSeries> = inverse_log_ratios(&corrections, grading, order)?
        .iter()
        .map(|t| t.neg().exp())
        .collect::<Result<_>>()?;
    let inverse = inverse_units
        .iter()
        .enumerate()
        .map(|(a, u)| TruncatedSeries::variable(grading.clone(), order, a).mul(u))
        .collect::<Result<_>>()?;
    Ok(MirrorMap { corrections, inverse, inverse_units })
}

/// `W0` rewritten in flat coordinates `Q`; coefficients are the disk invariants.
pub fn invariants_in_flat(
    g: &ToricCY3,
    b: &BraneSpec,
    f: i64,
    grading: &Grading,
    order: i64,
) -> Result<TruncatedSeries> {
    let map = build_mirror_map(g, b, f, grading, order)?;
    let w0 = w0_series(g, b, f, grading, order)?;
    let flat = w0.rescale_variables(&map.inverse_units)?;
    if flat.order() < order {
        return Err(Error::Internal(format!(
            "flat coordinates reached order {} < {order}",
            flat.order()
        )));
    }
    Ok(flat.truncate(order))
}

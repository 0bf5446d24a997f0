//! Disk amplitudes from the hypergeometric closed form of the open I-function.

use num_traits::{One, Zero};

use crate::bmodel::factorial;
use crate::error::{Error, Result};
use crate::series::{ExtExponent, Grading, TruncatedSeries};
use crate::toric::{BraneKind, BraneSpec, ToricCY3};
use crate::{rat, Rational};

/// Charge-like vector entering the bracket, with its derivative in the framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVector {
    pub values: Vec<i64>,
    pub framing_direction: Vec<i64>,
}

impl LVector {
    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `(-1)^(fw) prod_{m=1}^{w-1} (fw+m) / (w w!)` for `w >= 1`.
pub fn disk_factor_pos(w: i64, f: i64) -> Result<Rational> {
    if w < 1 {
        return Err(Error::Domain(format!("positive disk factor needs w >= 1, got {w}")));
    }
    let prod = (1..w).fold(Rational::one(), |acc, m| acc * rat(f * w + m));
    Ok(sign(f * w) * prod / (rat(w) * factorial(w)))
}

/// `(-1)^((f+n)w) prod_{m=1}^{-w-1} ((f+n)(-w)+m) / ((-w) (-w)!)` for `w <= -1`.
pub fn disk_factor_neg(w: i64, f: i64, n: i64) -> Result<Rational> {
    if w > -1 {
        return Err(Error::Domain(format!("negative disk factor needs w <= -1, got {w}")));
    }
    let v = -w;
    let prod = (1..v).fold(Rational::one(), |acc, m| acc * rat((f + n) * v + m));
    Ok(sign((f + n) * w) * prod / (rat(v) * factorial(v)))
}

/// `l0` for a framed brane.
pub fn l_zero(g: &ToricCY3, b: &BraneSpec, f: i64) -> LVector {
    LVector {
        values: b.l0(g.r(), f),
        framing_direction: b.framing_direction(g.r()),
    }
}

/// `l- = l0 - <D_i*, alpha>` for an inner brane.
pub fn l_minus(g: &ToricCY3, b: &BraneSpec, f: i64) -> Result<LVector> {
    if b.kind != BraneKind::Inner {
        return Err(Error::Geometry(format!("brane {} is not inner", b.label)));
    }
    let alpha = g.curve_class_alpha(b)?;
    let l0 = l_zero(g, b, f);
    Ok(LVector {
        values: l0
            .values
            .iter()
            .zip(g.pairings(&alpha))
            .map(|(a, c)| a - c)
            .collect(),
        framing_direction: l0.framing_direction,
    })
}

/// Leading behaviour `value * eps^order` of a product of linear factors in `eps`.
struct Leading {
    value: Rational,
    order: i64,
}

/// Bracket coefficient `prod_i prod_{m<=0}(a_i+m) / prod_{m<=c_i}(a_i+m)` with
/// `a_i = w l_i + w dl_i eps`, evaluated at `eps -> 0`.
fn bracket_coefficient(l: &LVector, w: i64, pairings: &[i64]) -> Result<Rational> {
    let mut lead = Leading { value: Rational::one(), order: 0 };
    let mut exact_zero = false;
    for ((&li, &dl), &c) in l.values.iter().zip(&l.framing_direction).zip(pairings) {
        let a = w * li;
        let s = w * dl;
        let (range, numerator) = if c >= 0 { (1..=c, false) } else { (c + 1..=0, true) };
        for m in range {
            let x = a + m;
            let (value, step) = match (x, s) {
                (0, 0) if numerator => {
                    exact_zero = true;
                    continue;
                }
                (0, 0) => {
                    return Err(Error::Internal(format!(
                        "bracket factor diverges at w={w}, pairings {pairings:?}"
                    )))
                }
                (0, s) => (rat(s), 1),
                (x, _) => (rat(x), 0),
            };
            if numerator {
                lead.value *= value;
                lead.order += step;
            } else {
                lead.value /= value;
                lead.order -= step;
            }
        }
    }
    if exact_zero || lead.order > 0 {
        return Ok(Rational::zero());
    }
    if lead.order < 0 {
        return Err(Error::Internal(format!(
            "bracket has a pole of order {} at w={w}, pairings {pairings:?}",
            -lead.order
        )));
    }
    Ok(lead.value)
}

fn bracket_from_classes(
    g: &ToricCY3,
    l: &LVector,
    w: i64,
    classes: &[Vec<i64>],
    grading: &Grading,
    order: i64,
) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(grading.clone(), order);
    for beta in classes {
        if beta.iter().all(|&x| x == 0) || grading.closed_grade(beta) > order {
            continue;
        }
        let c = bracket_coefficient(l, w, &g.pairings(beta))?;
        out.add_term(ExtExponent::closed(beta.clone()), c);
    }
    Ok(out)
}

/// `1 + sum_{beta > 0} q^beta prod_i [bracket]` over effective classes of grade `<= order`.
pub fn j_bracket(
    g: &ToricCY3,
    l: &LVector,
    w: i64,
    grading: &Grading,
    order: i64,
) -> Result<TruncatedSeries> {
    if w == 0 {
        return Err(Error::Domain("bracket needs w != 0".into()));
    }
    let classes = g.enumerate_effective(grading, order.max(0))?;
    bracket_from_classes(g, l, w, &classes, grading, order)
}

/// The disk generating function in algebraic coordinates, assembled winding by winding.
pub fn f_q(g: &ToricCY3, b: &BraneSpec, f: i64, grading: &Grading, order: i64) -> Result<TruncatedSeries> {
    let classes = g.enumerate_effective(grading, order.max(0))?;
    let mut out = TruncatedSeries::zero(grading.clone(), order);
    let g0 = grading.weight(0);
    let l0 = l_zero(g, b, f);
    let k = g.k();
    let mut w = 1;
    while g0 * w <= order {
        let budget = order - g0 * w;
        let bracket = bracket_from_classes(g, &l0, w, &classes, grading, budget)?;
        let shift = ExtExponent::new(w, vec![0; k]);
        let factor = disk_factor_pos(w, f)?;
        for (e, c) in bracket.shift(&shift).terms() {
            out.add_term(e.clone(), c * &factor);
        }
        w += 1;
    }
    if b.kind == BraneKind::Inner {
        let alpha = g.curve_class_alpha(b)?;
        let n = g.inner_n(b)?;
        let lm = l_minus(g, b, f)?;
        let step = grading.closed_grade(&alpha) - g0;
        if step <= 0 {
            return Err(Error::Config(format!(
                "grading {grading} does not make q0^-1 q^alpha positive"
            )));
        }
        let mut v = 1;
        while step * v <= order {
            let budget = order - step * v;
            let bracket = bracket_from_classes(g, &lm, -v, &classes, grading, budget)?;
            let shift = ExtExponent::new(-v, alpha.iter().map(|a| a * v).collect());
            let factor = disk_factor_neg(-v, f, n)?;
            for (e, c) in bracket.shift(&shift).terms() {
                out.add_term(e.clone(), c * &factor);
            }
            v += 1;
        }
    }
    Ok(out)
}

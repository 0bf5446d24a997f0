//! Superpotential coefficients from the extended Frobenius expansion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{ExtExponent, Grading, TruncatedSeries};
use crate::toric::{BraneSpec, ToricCY3};
use crate::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRatioResult {
    pub value: Rational,
    pub vanished_by_pole: bool,
}

/// `prod_{m <= top} (a+m) / prod_{m <= bottom} (a+m)` as a finite product.
///
/// A zero factor in the denominator is read as a pole of the reciprocal gamma function
/// and yields 0 with the flag set; a zero factor in the numerator also sets the flag.
pub fn gamma_ratio(a: i64, top: i64, bottom: i64) -> GammaRatioResult {
    if top >= bottom {
        let value = (bottom + 1..=top).fold(Rational::one(), |acc, m| acc * rat(a + m));
        let vanished_by_pole = value.is_zero();
        GammaRatioResult { value, vanished_by_pole }
    } else {
        let den = (top + 1..=bottom).fold(Rational::one(), |acc, m| acc * rat(a + m));
        if den.is_zero() {
            GammaRatioResult { value: Rational::zero(), vanished_by_pole: true }
        } else {
            GammaRatioResult { value: den.recip(), vanished_by_pole: false }
        }
    }
}

/// `n!` as a rational, with `1/n! = 0` for negative `n` handled by callers.
pub(crate) fn factorial(n: i64) -> Rational {
    Rational::from_integer(int_factorial(n))
}

fn int_factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, m| acc * m)
}

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Coefficient `C(w, beta)` of the superpotential.
///
/// With `c2, c3` the extended pairings at `i2, i3`, the coefficient is
/// `(-1)^(c3+w) Gamma(-c3)/Gamma(c2+1) / (w prod c_i!)` over the remaining rays,
/// where the gamma ratio is the limit along the framing direction.
pub fn c_coeff(g: &ToricCY3, b: &BraneSpec, f: i64, e: &ExtExponent) -> Result<Rational> {
    if e.w == 0 {
        return Err(Error::Domain("superpotential coefficient needs w != 0".into()));
    }
    let c = g.extended_pairings(b, f, e);
    let mut den = BigInt::from(e.w);
    for (idx, &ci) in c.iter().enumerate() {
        let i = idx + 1;
        if i == b.i2 || i == b.i3 {
            continue;
        }
        if ci < 0 {
            return Ok(Rational::zero());
        }
        den *= int_factorial(ci);
    }
    let (c2, c3) = (c[b.i2 - 1], c[b.i3 - 1]);
    let (num, sgn) = match (c2 >= 0, c3 >= 0) {
        (true, false) => {
            den *= int_factorial(c2);
            (int_factorial(-c3 - 1), c3 + e.w)
        }
        (false, true) => {
            den *= int_factorial(c3);
            (int_factorial(-c2 - 1), c2 + 1 + e.w)
        }
        _ => return Ok(Rational::zero()),
    };
    Ok(sign(sgn) * Rational::new(num, den))
}

/// `W0 = sum C(w, beta) q0^w q^beta` over the extended cone, truncated at `order`.
pub fn w0_series(
    g: &ToricCY3,
    b: &BraneSpec,
    f: i64,
    grading: &Grading,
    order: i64,
) -> Result<TruncatedSeries> {
    let mut terms = Vec::new();
    for e in g.enumerate_extended(b, grading, order)? {
        let c = c_coeff(g, b, f, &e)?;
        terms.push((e, c));
    }
    Ok(TruncatedSeries::from_terms(grading.clone(), order, terms))
}

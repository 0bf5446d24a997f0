//! Mirror curves, their distinguished branch, and the Abel-Jacobi check against `W0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bmodel::w0_series;
use crate::error::{Error, Result};
use crate::linalg;
use crate::series::{ExtExponent, Grading, TruncatedSeries};
use crate::toric::{search_grading, BraneSpec, ToricCY3};
use crate::{rat, Rational};

/// `sign * xt^x yt^y q^q` in the tilde coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMonomial {
    pub sign: i8,
    pub x: i64,
    pub y: i64,
    pub q: Vec<i64>,
}

/// One term `coeff * x^x y^y q^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveTerm {
    pub coeff: Rational,
    pub x: i64,
    pub y: i64,
    pub q: Vec<i64>,
}

/// A Laurent polynomial in `x, y, q`; like monomials are combined and zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePolynomial {
    terms: BTreeMap<(i64, i64, Vec<i64>), Rational>,
}

impl CurvePolynomial {
    pub fn from_terms<I: IntoIterator<Item = CurveTerm>>(terms: I) -> Self {
        let mut map: BTreeMap<(i64, i64, Vec<i64>), Rational> = BTreeMap::new();
        for t in terms {
            *map.entry((t.x, t.y, t.q)).or_insert_with(Rational::zero) += t.coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = CurveTerm> + '_ {
        self.terms.iter().map(|((x, y, q), c)| CurveTerm {
            coeff: c.clone(),
            x: *x,
            y: *y,
            q: q.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^x y^y q^q`.
    pub fn coeff(&self, x: i64, y: i64, q: &[i64]) -> Rational {
        self.terms
            .get(&(x, y, q.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Multiplies by `c x^x y^y`.
    pub fn rescale(&self, c: &Rational, x: i64, y: i64) -> Self {
        Self::from_terms(self.terms().map(|t| CurveTerm {
            coeff: t.coeff * c,
            x: t.x + x,
            y: t.y + y,
            q: t.q,
        }))
    }

    /// Divides by the q-free pair `c x^a y^b + c x^a y^(b+1)`, so the curve reads
    /// `1 + y + (rest)`.
    pub fn normalized(&self) -> Result<Self> {
        let free: Vec<CurveTerm> = self.terms().filter(|t| t.q.iter().all(|&e| e == 0)).collect();
        let pair = free.iter().find(|lo| {
            free.iter()
                .any(|hi| hi.x == lo.x && hi.y == lo.y + 1 && hi.coeff == lo.coeff)
        });
        let Some(lo) = pair else {
            return Err(Error::Geometry("curve has no gauge pair c + c y".into()));
        };
        Ok(self.rescale(&lo.coeff.recip(), -lo.x, -lo.y))
    }

    /// Substitutes `x -> x y^(-f)` (tilde to framed coordinates).
    pub fn framed(&self, f: i64) -> Self {
        Self::from_terms(self.terms().map(|t| CurveTerm {
            y: t.y - f * t.x,
            ..t
        }))
    }
}

impl fmt::Display for CurvePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.terms().enumerate() {
            let neg = t.coeff.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = t.coeff.abs();
            let mut parts = Vec::new();
            if !c.is_one() {
                parts.push(c.to_string());
            }
            let mut var = |name: String, e: i64| match e {
                0 => {}
                1 => parts.push(name),
                _ => parts.push(format!("{name}^{e}")),
            };
            var("x".into(), t.x);
            var("y".into(), t.y);
            for (a, &e) in t.q.iter().enumerate() {
                var(format!("q{}", a + 1), e);
            }
            if parts.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Monomials `x_i(xt, yt, q)` for the rays off the brane cone, in the gauge
/// `x_{i1} = -xt`, `x_{i2} = yt`, `x_{i3} = 1`.
pub fn solve_coordinates(g: &ToricCY3, b: &BraneSpec) -> Result<Vec<(usize, SignedMonomial)>> {
    let rays = g.off_brane_rays(b);
    let k = g.k();
    // m[a][j] = l^(a) at the j-th off-brane ray.
    let m: Vec<Vec<i64>> = g
        .charge
        .iter()
        .map(|row| rays.iter().map(|&i| row[i - 1]).collect())
        .collect();
    let inv = linalg::integer_inverse(&m).ok_or_else(|| {
        Error::Geometry(format!(
            "charge minor off brane {} is not unimodular",
            b.label
        ))
    })?;
    Ok(rays
        .iter()
        .enumerate()
        .map(|(j, &i)| {
            let q: Vec<i64> = (0..k).map(|a| inv[j][a]).collect();
            let px: i64 = -(0..k).map(|a| inv[j][a] * g.charge[a][b.i1 - 1]).sum::<i64>();
            let py: i64 = -(0..k).map(|a| inv[j][a] * g.charge[a][b.i2 - 1]).sum::<i64>();
            let sign = if px.rem_euclid(2) == 0 { 1 } else { -1 };
            (i, SignedMonomial { sign, x: px, y: py, q })
        })
        .collect())
}

/// `H = -xt + yt + 1 + sum x_i` in tilde coordinates.
pub fn tilde_curve(g: &ToricCY3, b: &BraneSpec) -> Result<CurvePolynomial> {
    let k = g.k();
    let mut terms = vec![
        CurveTerm { coeff: rat(-1), x: 1, y: 0, q: vec![0; k] },
        CurveTerm { coeff: rat(1), x: 0, y: 1, q: vec![0; k] },
        CurveTerm { coeff: rat(1), x: 0, y: 0, q: vec![0; k] },
    ];
    for (_, m) in solve_coordinates(g, b)? {
        terms.push(CurveTerm { coeff: rat(m.sign.into()), x: m.x, y: m.y, q: m.q });
    }
    Ok(CurvePolynomial::from_terms(terms))
}

/// The framed curve `M(x, y, q)`, from `xt = x y^(-f)`, `yt = y`.
pub fn framed_curve(g: &ToricCY3, b: &BraneSpec, f: i64) -> Result<CurvePolynomial> {
    Ok(tilde_curve(g, b)?.framed(f))
}

/// `(x, q)` exponents of the non-gauge terms of a normalized curve.
fn non_gauge(curve: &CurvePolynomial) -> Vec<CurveTerm> {
    curve
        .terms()
        .filter(|t| !(t.x == 0 && (t.y == 0 || t.y == 1) && t.q.iter().all(|&e| e == 0)))
        .collect()
}

/// Exponents in `(x, q)` that a grading must make positive for the branch expansion.
pub fn curve_requirements(curve: &CurvePolynomial) -> Result<Vec<ExtExponent>> {
    Ok(non_gauge(&curve.normalized()?)
        .into_iter()
        .map(|t| ExtExponent::new(t.x, t.q))
        .collect())
}

/// Smallest grading that serves both `W0` and the branch of the framed curve.
pub fn curve_grading(g: &ToricCY3, b: &BraneSpec, f: i64) -> Result<Grading> {
    let mut req = g.grading_requirements(Some(b))?;
    req.extend(curve_requirements(&framed_curve(g, b, f)?)?);
    search_grading(g.k(), &req)
}

const MAX_NEWTON_STEPS: usize = 64;

/// The branch `y = -(1 + u(x, q))` with `u(0, 0) = 0`, with `x` identified with `q0`.
pub fn y_branch(curve: &CurvePolynomial, grading: &Grading, order: i64) -> Result<TruncatedSeries> {
    let normalized = curve.normalized()?;
    let rest = non_gauge(&normalized);
    let mut monomials = Vec::with_capacity(rest.len());
    for t in rest {
        let e = ExtExponent::new(t.x, t.q);
        if e.k() != grading.k() {
            return Err(Error::Config("curve and grading disagree on k".into()));
        }
        let gr = grading.grade(&e);
        if gr <= 0 {
            return Err(Error::Config(format!(
                "grading {grading} gives curve monomial {e} grade {gr} <= 0"
            )));
        }
        let sign = if t.y.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        monomials.push((e, t.coeff * sign, t.y));
    }
    // F(u) = -u + sum c x^a q^e (1+u)^b, F'(u) = -1 + sum c b x^a q^e (1+u)^(b-1).
    let eval = |u: &TruncatedSeries| -> Result<(TruncatedSeries, TruncatedSeries)> {
        let log = u.log1p()?;
        let mut value = u.neg();
        let mut deriv = TruncatedSeries::constant(grading.clone(), order, rat(-1));
        let mut powers: BTreeMap<i64, TruncatedSeries> = BTreeMap::new();
        let mut power = |n: i64| -> Result<TruncatedSeries> {
            if let Some(p) = powers.get(&n) {
                return Ok(p.clone());
            }
            let p = log.scale(&rat(n)).exp()?;
            powers.insert(n, p.clone());
            Ok(p)
        };
        for (e, c, b) in &monomials {
            value = value.add(&power(*b)?.mul_monomial(e, c))?;
            if *b != 0 {
                deriv = deriv.add(&power(b - 1)?.mul_monomial(e, &(c * rat(*b))))?;
            }
        }
        Ok((value, deriv))
    };
    let mut u = TruncatedSeries::zero(grading.clone(), order);
    for _ in 0..MAX_NEWTON_STEPS {
        let (value, deriv) = eval(&u)?;
        if value.is_zero() {
            return Ok(u);
        }
        u = u.sub(&value.mul(&deriv.recip()?)?)?;
    }
    Err(Error::Internal("branch expansion did not converge".into()))
}

/// Outcome of comparing `x dW0/dx` with `-eps log(-y)` on the branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelJacobiReport {
    /// Number of `x`-dependent terms left in `x dW0/dx + eps log1p(u)`, for `eps = +1, -1`.
    pub residual_terms: [(i8, usize); 2],
    /// The `x`-independent remainder for each sign.
    pub remainders: [(i8, TruncatedSeries); 2],
}

impl AbelJacobiReport {
    /// The unique passing sign, if exactly one passes.
    pub fn epsilon(&self) -> Option<i8> {
        let passing: Vec<i8> = self
            .residual_terms
            .iter()
            .filter(|(_, n)| *n == 0)
            .map(|(e, _)| *e)
            .collect();
        (passing.len() == 1).then(|| passing[0])
    }

    pub fn remainder(&self) -> Option<&TruncatedSeries> {
        let eps = self.epsilon()?;
        self.remainders.iter().find(|(e, _)| *e == eps).map(|(_, r)| r)
    }
}

pub fn abel_jacobi_check(
    g: &ToricCY3,
    b: &BraneSpec,
    f: i64,
    grading: &Grading,
    order: i64,
) -> Result<AbelJacobiReport> {
    let w0 = w0_series(g, b, f, grading, order)?;
    let xdw = w0.theta(0);
    let u = y_branch(&framed_curve(g, b, f)?, grading, order)?;
    let log = u.log1p()?;
    let mut residual_terms = [(1i8, 0usize), (-1, 0)];
    let mut remainders = [
        (1i8, TruncatedSeries::zero(grading.clone(), order)),
        (-1, TruncatedSeries::zero(grading.clone(), order)),
    ];
    for (slot, eps) in [1i8, -1].into_iter().enumerate() {
        let r = xdw.add(&log.scale(&rat(eps.into())))?;
        residual_terms[slot] = (eps, r.terms().filter(|(e, _)| e.w != 0).count());
        remainders[slot] = (eps, r.filter(|e| e.w == 0));
    }
    Ok(AbelJacobiReport { residual_terms, remainders })
}

/// Printed framed-curve term `coeff x^x y^(y + yf f) q^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedTerm {
    pub coeff: i64,
    pub x: i64,
    pub y: i64,
    pub yf: i64,
    pub q: Vec<i64>,
}

/// Evaluates a printed curve at framing `f`.
pub fn printed_curve(terms: &[PrintedTerm], f: i64) -> CurvePolynomial {
    CurvePolynomial::from_terms(terms.iter().map(|t| CurveTerm {
        coeff: rat(t.coeff),
        x: t.x,
        y: t.y + t.yf * f,
        q: t.q.clone(),
    }))
}

/// Whether two curves agree after normalizing away a monomial factor and flipping the
/// signs of some `q_a`.
pub fn equivalent_curves(a: &CurvePolynomial, b: &CurvePolynomial) -> bool {
    let (Ok(a), Ok(b)) = (a.normalized(), b.normalized()) else {
        return false;
    };
    if a.len() != b.len() {
        return false;
    }
    let k = a.terms().next().map_or(0, |t| t.q.len());
    (0..1u32 << k).any(|mask| {
        a.terms().all(|t| {
            let flips: i64 = t
                .q
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| *e)
                .sum();
            let sign = if flips.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
            b.coeff(t.x, t.y, &t.q) == t.coeff * sign
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn conifold_coordinates() {
        let (g, b) = catalog::phase("conifold", "I").unwrap();
        let coords = solve_coordinates(&g, &b).unwrap();
        assert_eq!(coords, vec![(3, SignedMonomial { sign: -1, x: -1, y: 1, q: vec![1] })]);
        let curve = framed_curve(&g, &b, 2).unwrap();
        let expected = CurvePolynomial::from_terms([
            CurveTerm { coeff: rat(-1), x: 1, y: -2, q: vec![0] },
            CurveTerm { coeff: rat(1), x: 0, y: 1, q: vec![0] },
            CurveTerm { coeff: rat(1), x: 0, y: 0, q: vec![0] },
            CurveTerm { coeff: rat(-1), x: -1, y: 3, q: vec![1] },
        ]);
        assert_eq!(curve, expected);
    }

    #[test]
    fn kp2_outer_coordinate() {
        let (g, b) = catalog::phase("KP2", "III").unwrap();
        let coords = solve_coordinates(&g, &b).unwrap();
        assert_eq!(coords, vec![(4, SignedMonomial { sign: -1, x: 3, y: -1, q: vec![1] })]);
    }

    #[test]
    fn coordinates_solve_torus_equations() {
        for (g, b) in catalog::all_phases(5) {
            let mut x = vec![(0i64, 0i64, vec![0i64; g.k()], 1i64); g.r()];
            x[b.i1 - 1] = (1, 0, vec![0; g.k()], -1);
            x[b.i2 - 1] = (0, 1, vec![0; g.k()], 1);
            for (i, m) in solve_coordinates(&g, &b).unwrap() {
                x[i - 1] = (m.x, m.y, m.q, m.sign.into());
            }
            for (a, row) in g.charge.iter().enumerate() {
                let mut tot = (0, 0, vec![0; g.k()], 1i64);
                for (l, xi) in row.iter().zip(&x) {
                    tot.0 += l * xi.0;
                    tot.1 += l * xi.1;
                    for (t, e) in tot.2.iter_mut().zip(&xi.2) {
                        *t += l * e;
                    }
                    if xi.3 < 0 && l.rem_euclid(2) == 1 {
                        tot.3 = -tot.3;
                    }
                }
                let mut unit = vec![0; g.k()];
                unit[a] = 1;
                assert_eq!(tot, (0, 0, unit, 1), "{} {}", g.name, b.label);
            }
        }
    }

    #[test]
    fn conifold_branch_is_rational_function() {
        let (g, b) = catalog::phase("conifold", "I").unwrap();
        let grading = curve_grading(&g, &b, 0).unwrap();
        let order = 8;
        let u = y_branch(&framed_curve(&g, &b, 0).unwrap(), &grading, order).unwrap();
        // y (1 - q/x) = x - 1 with y = -(1+u).
        let x = TruncatedSeries::variable(grading.clone(), order, 0);
        let qx = TruncatedSeries::monomial(grading.clone(), order, ExtExponent::new(-1, vec![1]), rat(1));
        let one = TruncatedSeries::one(grading.clone(), order);
        let y = one.add(&u).unwrap().neg();
        let lhs = y.mul(&one.sub(&qx).unwrap()).unwrap();
        assert_eq!(lhs, x.sub(&one).unwrap());
    }

    #[test]
    fn branch_resubstitution() {
        for (geom, label) in [("KP2", "III"), ("KF0", "I"), ("KdP1", "II")] {
            let (g, b) = catalog::phase(geom, label).unwrap();
            for f in -1..=1 {
                let curve = framed_curve(&g, &b, f).unwrap();
                let grading = curve_grading(&g, &b, f).unwrap();
                let order = 6;
                let u = y_branch(&curve, &grading, order).unwrap();
                let log = u.log1p().unwrap();
                let mut total = TruncatedSeries::zero(grading.clone(), order);
                for t in curve.terms() {
                    let sign = if t.y.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
                    let p = log.scale(&rat(t.y)).exp().unwrap();
                    let shifted = p.shift(&ExtExponent::new(t.x, t.q.clone()));
                    for (e, c) in shifted.terms() {
                        total.add_term(e.clone(), c * &t.coeff * &sign);
                    }
                }
                // The whole curve may carry a monomial factor; the residual must still vanish
                // up to the precision that factor leaves.
                assert!(total.truncate(order - grading.weights().iter().max().unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn gauge_independence() {
        let (g, b) = catalog::phase("KP2", "III").unwrap();
        let curve = framed_curve(&g, &b, 1).unwrap();
        let grading = curve_grading(&g, &b, 1).unwrap();
        let u = y_branch(&curve, &grading, 6).unwrap();
        let scaled = curve.rescale(&rat(-3), 2, -5);
        assert_eq!(y_branch(&scaled, &grading, 6).unwrap(), u);
    }

    #[test]
    fn newton_polygon_has_gauge_vertices() {
        for (g, b) in catalog::all_phases(4) {
            for f in -2..=2 {
                let c = framed_curve(&g, &b, f).unwrap();
                let zero = vec![0; g.k()];
                assert_eq!(c.coeff(1, -f, &zero), rat(-1));
                assert_eq!(c.coeff(0, 1, &zero), rat(1));
                assert_eq!(c.coeff(0, 0, &zero), rat(1));
            }
        }
    }

    #[test]
    fn conifold_abel_jacobi_exact() {
        let (g, b) = catalog::phase("conifold", "I").unwrap();
        let grading = curve_grading(&g, &b, 0).unwrap();
        let report = abel_jacobi_check(&g, &b, 0, &grading, 8).unwrap();
        assert_eq!(report.epsilon(), Some(1));
        assert!(report.remainder().unwrap().is_zero());
    }
}

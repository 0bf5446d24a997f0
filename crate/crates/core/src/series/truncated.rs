use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{ExtExponent, Grading};
use crate::error::{Error, Result};
use crate::Rational;

/// Sparse multivariate series in `q0, q1..qk`, truncated at weighted total grade `order`.
///
/// The open exponent `w` may be negative. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    grading: Grading,
    order: i64,
    terms: BTreeMap<ExtExponent, Rational>,
}

impl TruncatedSeries {
    pub fn zero(grading: Grading, order: i64) -> Self {
        Self {
            grading,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(grading: Grading, order: i64) -> Self {
        Self::constant(grading, order, Rational::one())
    }

    pub fn constant(grading: Grading, order: i64, c: Rational) -> Self {
        let k = grading.k();
        Self::monomial(grading, order, ExtExponent::zero(k), c)
    }

    /// `c * q^e`, or zero when `e` lies beyond the truncation order.
    pub fn monomial(grading: Grading, order: i64, e: ExtExponent, c: Rational) -> Self {
        let mut s = Self::zero(grading, order);
        s.add_term(e, c);
        s
    }

    /// The variable `q_var` itself.
    pub fn variable(grading: Grading, order: i64, var: usize) -> Self {
        let k = grading.k();
        Self::monomial(grading, order, ExtExponent::unit(var, k), Rational::one())
    }

    /// Builds a series from terms, summing repeats and dropping those past `order`.
    pub fn from_terms<I>(grading: Grading, order: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExtExponent, Rational)>,
    {
        let mut s = Self::zero(grading, order);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn k(&self) -> usize {
        self.grading.k()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtExponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^e`; errors when `e` is past the truncation order.
    pub fn coeff(&self, e: &ExtExponent) -> Result<Rational> {
        let grade = self.grading.grade(e);
        if grade > self.order {
            return Err(Error::OutOfRange {
                grade,
                order: self.order,
            });
        }
        Ok(self.get(e))
    }

    /// Stored coefficient, zero when absent.
    pub fn get(&self, e: &ExtExponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, e: ExtExponent, c: Rational) {
        if c.is_zero() || self.grading.grade(&e) > self.order {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lowest total grade among stored terms.
    pub fn min_grade(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.grading.grade(e)).min()
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Self {
            grading: self.grading.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| self.grading.grade(e) <= order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms selected by `keep`.
    pub fn filter<F: Fn(&ExtExponent) -> bool>(&self, keep: F) -> Self {
        Self {
            grading: self.grading.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_grading(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch(
                self.grading.weights().to_vec(),
                other.grading.weights().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        let mut out = self.truncate(other.order);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.grading.clone(), self.order);
        }
        Self {
            grading: self.grading.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `c * q^e`, discarding whatever moves past the order.
    pub fn mul_monomial(&self, e: &ExtExponent, c: &Rational) -> Self {
        let mut out = Self::zero(self.grading.clone(), self.order);
        if c.is_zero() {
            return out;
        }
        for (f, v) in &self.terms {
            out.add_term(f + e, v * c);
        }
        out
    }

    /// Same as [`mul_monomial`](Self::mul_monomial) but keeps every shifted term,
    /// with the order shifted by the monomial's grade.
    pub(crate) fn shift(&self, e: &ExtExponent) -> Self {
        let g = self.grading.grade(e);
        Self {
            grading: self.grading.clone(),
            order: self.order + g,
            terms: self.terms.iter().map(|(f, v)| (f + e, v.clone())).collect(),
        }
    }

    pub(crate) fn with_order(mut self, order: i64) -> Self {
        self.order = order;
        let g = self.grading.clone();
        self.terms.retain(|e, _| g.grade(e) <= order);
        self
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        let order = self.order.min(other.order);
        fn graded(s: &TruncatedSeries) -> Vec<(i64, &ExtExponent, &Rational)> {
            let mut v: Vec<(i64, &ExtExponent, &Rational)> = s
                .terms
                .iter()
                .map(|(e, c)| (s.grading.grade(e), e, c))
                .collect();
            v.sort_by_key(|t| t.0);
            v
        }
        let a = graded(self);
        let b = graded(other);
        let Some(&(bmin, _, _)) = b.first() else {
            return Ok(Self::zero(self.grading.clone(), order));
        };
        let mut acc: HashMap<ExtExponent, Rational> = HashMap::new();
        for &(ga, ea, ca) in &a {
            if ga + bmin > order {
                break;
            }
            for &(gb, eb, cb) in &b {
                if ga + gb > order {
                    break;
                }
                *acc.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(Self {
            grading: self.grading.clone(),
            order,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Splits off the constant term and checks that the rest has positive grade.
    fn split_unit(&self) -> Result<(Rational, Self)> {
        let k = self.k();
        let zero = ExtExponent::zero(k);
        let c = self.get(&zero);
        let rest = self.filter(|e| *e != zero);
        if let Some(g) = rest.min_grade() {
            if g <= 0 {
                return Err(Error::Domain(format!(
                    "series has a non-constant term of grade {g} <= 0"
                )));
            }
        }
        Ok((c, rest))
    }

    /// Σ c_n s^n for a positive-grade `s`, stopping once powers vanish.
    fn power_sum<F: Fn(u64) -> Rational>(s: &Self, c0: Rational, coeff: F) -> Result<Self> {
        let mut out = Self::constant(s.grading.clone(), s.order, c0);
        let mut pow = Self::one(s.grading.clone(), s.order);
        let mut n = 1u64;
        loop {
            pow = pow.mul(s)?;
            if pow.is_zero() {
                return Ok(out);
            }
            let c = coeff(n);
            out = out.add(&pow.scale(&c))?;
            n += 1;
        }
    }

    pub fn exp(&self) -> Result<Self> {
        let (c, rest) = self.split_unit()?;
        if !c.is_zero() {
            return Err(Error::Domain("exp of a series with a grade-0 term".into()));
        }
        // 1/n! accumulated incrementally.
        let mut fact = Rational::one();
        let mut out = Self::one(self.grading.clone(), self.order);
        let mut term = Self::one(self.grading.clone(), self.order);
        let mut n = 1i64;
        loop {
            term = term.mul(&rest)?;
            if term.is_zero() {
                return Ok(out);
            }
            fact /= Rational::from_integer(n.into());
            out = out.add(&term.scale(&fact))?;
            n += 1;
        }
    }

    pub fn log1p(&self) -> Result<Self> {
        let (c, rest) = self.split_unit()?;
        if !c.is_zero() {
            return Err(Error::Domain("log1p of a series with a grade-0 term".into()));
        }
        Self::power_sum(&rest, Rational::zero(), |n| {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            Rational::new(sign.into(), n.into())
        })
    }

    /// Multiplicative inverse of a series `c + (positive grade)` with `c != 0`.
    pub fn recip(&self) -> Result<Self> {
        let (c, rest) = self.split_unit()?;
        if c.is_zero() {
            return Err(Error::Domain("series is not invertible".into()));
        }
        let inv = c.recip();
        let t = rest.scale(&-inv.clone());
        Ok(Self::power_sum(&t, Rational::one(), |_| Rational::one())?.scale(&inv))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.recip()?.pow(-n);
        }
        let mut base = self.clone();
        let mut out = Self::one(self.grading.clone(), self.order);
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out)
    }

    /// `q_var d/dq_var`.
    pub fn theta(&self, var: usize) -> Self {
        Self {
            grading: self.grading.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(var) != 0)
                .map(|(e, c)| (e.clone(), c * Rational::from_integer(e.get(var).into())))
                .collect(),
        }
    }

    /// `s(q_0 -> q_0 units[0], .., q_k -> q_k units[k])` for units with nonzero constant term.
    ///
    /// A term `c q^e` becomes `c q^e prod units^e`, known to the unit order plus `grade(e)`,
    /// so positive-grade terms lose no precision even for negative exponents.
    pub fn rescale_variables(&self, units: &[Self]) -> Result<Self> {
        Ok(Self::rescale_all(std::slice::from_ref(self), units)?.remove(0))
    }

    /// [`rescale_variables`](Self::rescale_variables) for several series, sharing the unit
    /// products between them.
    pub fn rescale_all(series: &[Self], units: &[Self]) -> Result<Vec<Self>> {
        let Some(first) = series.first() else {
            return Ok(Vec::new());
        };
        let nvars = first.k() + 1;
        if units.len() != nvars {
            return Err(Error::Domain(format!(
                "rescaling needs {nvars} units, got {}",
                units.len()
            )));
        }
        for x in series.iter().chain(units) {
            first.check_grading(x)?;
        }
        let grading = &first.grading;
        let unit_order = units.iter().map(|u| u.order).min().unwrap_or(first.order);
        let mut powers: HashMap<(usize, i64), TruncatedSeries> = HashMap::new();
        let mut products: HashMap<ExtExponent, TruncatedSeries> = HashMap::new();
        let mut out = Vec::with_capacity(series.len());
        for s in series {
            let mut acc = Self::zero(grading.clone(), s.order);
            let mut reached = s.order;
            for (e, c) in &s.terms {
                let shift = grading.grade(e);
                if shift > s.order {
                    continue;
                }
                let need = unit_order.min(s.order - shift);
                let cached = products.get(e).filter(|p| p.order >= need);
                let prod = match cached {
                    Some(p) => p.truncate(need),
                    None => {
                        let mut p = Self::one(grading.clone(), need);
                        for (v, x) in e.as_vec().into_iter().enumerate() {
                            if x == 0 {
                                continue;
                            }
                            let pw = match powers.entry((v, x)) {
                                std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                                std::collections::hash_map::Entry::Vacant(slot) => slot.insert(units[v].pow(x)?),
                            };
                            p = p.mul(pw)?;
                        }
                        products.insert(e.clone(), p.clone());
                        p
                    }
                };
                reached = reached.min(prod.order + shift);
                for (f, val) in &prod.terms {
                    acc.add_term(f + e, val * c);
                }
            }
            out.push(acc.with_order(reached));
        }
        Ok(out)
    }

    /// Formal composition `s(q_0 -> images[0], .., q_k -> images[k])`.
    ///
    /// Each image must start at or above the grade of the variable it replaces.
    /// A variable raised to a negative power additionally needs an image with a single
    /// leading monomial of exactly that grade, so it factors as monomial times unit.
    /// The result order is the common order, lowered where inverted units limit precision.
    pub fn substitute(&self, images: &[Self]) -> Result<Self> {
        let nvars = self.k() + 1;
        if images.len() != nvars {
            return Err(Error::Domain(format!(
                "substitution needs {nvars} images, got {}",
                images.len()
            )));
        }
        for img in images {
            self.check_grading(img)?;
        }
        let order = images.iter().map(|s| s.order).fold(self.order, i64::min);
        let grading = &self.grading;
        let mut used = vec![false; nvars];
        let mut inverted = vec![false; nvars];
        for e in self.terms.keys() {
            for (v, x) in e.as_vec().into_iter().enumerate() {
                used[v] |= x != 0;
                inverted[v] |= x < 0;
            }
        }

        let mut forms: Vec<Option<Image>> = Vec::with_capacity(nvars);
        for (v, img) in images.iter().enumerate() {
            if !used[v] {
                forms.push(None);
                continue;
            }
            let gv = grading.weight(v);
            let Some(lead) = img.min_grade() else {
                if inverted[v] {
                    return Err(Error::Domain(format!("zero image for inverted variable q{v}")));
                }
                forms.push(Some(Image::Plain(img.clone())));
                continue;
            };
            if lead < gv {
                return Err(Error::Domain(format!(
                    "image of q{v} starts at grade {lead}, below the variable grade {gv}"
                )));
            }
            let leading: Vec<_> = img
                .terms
                .iter()
                .filter(|(e, _)| grading.grade(e) == lead)
                .collect();
            if leading.len() == 1 {
                let (mono, coeff) = leading[0];
                let unit = img.shift(&-mono).scale(&coeff.recip());
                forms.push(Some(Image::Unit {
                    coeff: coeff.clone(),
                    mono: mono.clone(),
                    unit,
                }));
            } else if inverted[v] {
                return Err(Error::Domain(format!(
                    "image of inverted variable q{v} has no single leading monomial"
                )));
            } else {
                forms.push(Some(Image::Plain(img.clone())));
            }
            if inverted[v] && lead != gv {
                return Err(Error::Domain(format!(
                    "image of inverted variable q{v} must lead at grade {gv}"
                )));
            }
        }

        let mut cache: HashMap<(usize, i64), TruncatedSeries> = HashMap::new();
        let mut out = Self::zero(grading.clone(), order);
        let mut reached = order;
        for (e, c) in &self.terms {
            let exps = e.as_vec();
            let mut mono = ExtExponent::zero(self.k());
            let mut scalar = c.clone();
            for (v, &x) in exps.iter().enumerate() {
                if let (true, Some(Image::Unit { coeff, mono: m, .. })) = (x != 0, &forms[v]) {
                    mono = &mono + &m.scale(x);
                    scalar *= rational_pow(coeff, x);
                }
            }
            let shift = grading.grade(&mono);
            if shift > order {
                continue;
            }
            let mut prod = Self::constant(grading.clone(), order - shift, scalar);
            for (v, &x) in exps.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let form = forms[v].as_ref().expect("used variable has an image");
                let p = match cache.get(&(v, x)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = match form {
                            Image::Unit { unit, .. } => unit.pow(x)?,
                            Image::Plain(s) => s.pow(x)?,
                        };
                        cache.insert((v, x), p.clone());
                        p
                    }
                };
                prod = prod.mul(&p)?;
            }
            reached = reached.min(prod.order + shift);
            for (f, val) in prod.terms {
                out.add_term(&f + &mono, val);
            }
        }
        Ok(out.with_order(reached))
    }
}

enum Image {
    Unit {
        coeff: Rational,
        mono: ExtExponent,
        unit: TruncatedSeries,
    },
    Plain(TruncatedSeries),
}

fn rational_pow(c: &Rational, n: i64) -> Rational {
    let base = if n < 0 { c.recip() } else { c.clone() };
    num_traits::pow(base, n.unsigned_abs() as usize)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { " - " } else if i > 0 { " + " } else { "" };
            let sign = if i == 0 && c.is_negative() { "-" } else { sign };
            write!(f, "{sign}{}", c.abs())?;
            for (v, x) in e.as_vec().into_iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*q{v}")?,
                    _ => write!(f, "*q{v}^{x}")?,
                }
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

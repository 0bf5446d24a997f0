use std::collections::BTreeMap;

use super::{ExtExponent, Grading, TruncatedSeries};
use crate::error::{Error, Result};
use crate::Rational;

/// Polynomial in `log q_0 .. log q_k` with truncated-series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    max_log_degree: u32,
    grading: Grading,
    order: i64,
    terms: BTreeMap<Vec<u32>, TruncatedSeries>,
}

impl LogSeries {
    pub const DEFAULT_MAX_LOG_DEGREE: u32 = 2;

    pub fn zero(grading: Grading, order: i64) -> Self {
        Self {
            max_log_degree: Self::DEFAULT_MAX_LOG_DEGREE,
            grading,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn with_max_log_degree(mut self, max: u32) -> Self {
        self.max_log_degree = max;
        self
    }

    /// A log-free series.
    pub fn from_series(s: TruncatedSeries) -> Self {
        let mut out = Self::zero(s.grading().clone(), s.order());
        let key = vec![0; s.k() + 1];
        out.insert(key, s);
        out
    }

    /// The symbol `log q_var`.
    pub fn log_var(grading: Grading, order: i64, var: usize) -> Self {
        let k = grading.k();
        let mut key = vec![0; k + 1];
        key[var] = 1;
        let mut out = Self::zero(grading.clone(), order);
        out.insert(key, TruncatedSeries::one(grading, order));
        out
    }

    fn insert(&mut self, key: Vec<u32>, s: TruncatedSeries) {
        if s.is_zero() {
            return;
        }
        let entry = self.terms.remove(&key);
        let sum = match entry {
            Some(t) => t.add(&s).expect("gradings checked by caller"),
            None => s,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn max_log_degree(&self) -> u32 {
        self.max_log_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient series of the log monomial `key`.
    pub fn coefficient(&self, key: &[u32]) -> Option<&TruncatedSeries> {
        self.terms.get(key)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &TruncatedSeries)> {
        self.terms.iter()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch(
                self.grading.weights().to_vec(),
                other.grading.weights().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        out.max_log_degree = self.max_log_degree.max(other.max_log_degree);
        for (key, s) in &other.terms {
            out.insert(key.clone(), s.truncate(order));
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (key, s) in &self.terms {
            out.insert(key.clone(), s.scale(c));
        }
        out
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let mut out = Self {
            order,
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (key, s) in &self.terms {
            out.insert(key.clone(), s.truncate(order));
        }
        out
    }

    /// Multiplies every coefficient by `c q^e`.
    pub fn mul_monomial(&self, e: &ExtExponent, c: &Rational) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (key, s) in &self.terms {
            out.insert(key.clone(), s.mul_monomial(e, c));
        }
        out
    }

    /// `q_var d/dq_var`, with `theta_a(log q_b) = delta_ab`.
    pub fn theta(&self, var: usize) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (key, s) in &self.terms {
            out.insert(key.clone(), s.theta(var));
            let m = key[var];
            if m > 0 {
                let mut lower = key.clone();
                lower[var] -= 1;
                out.insert(lower, s.scale(&Rational::from_integer(m.into())));
            }
        }
        out
    }
}

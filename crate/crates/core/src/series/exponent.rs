use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of a monomial `q0^w q1^d1 .. qk^dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtExponent {
    pub w: i64,
    pub d: Vec<i64>,
}

impl ExtExponent {
    pub fn new(w: i64, d: Vec<i64>) -> Self {
        Self { w, d }
    }

    pub fn zero(k: usize) -> Self {
        Self { w: 0, d: vec![0; k] }
    }

    /// A purely closed exponent (`w = 0`).
    pub fn closed(d: Vec<i64>) -> Self {
        Self { w: 0, d }
    }

    /// The exponent of the single variable `q_var`, where `var = 0` is the open variable.
    pub fn unit(var: usize, k: usize) -> Self {
        let mut e = Self::zero(k);
        e.set(var, 1);
        e
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    /// Exponent of variable `var` (0 is `w`).
    pub fn get(&self, var: usize) -> i64 {
        if var == 0 {
            self.w
        } else {
            self.d[var - 1]
        }
    }

    pub fn set(&mut self, var: usize, value: i64) {
        if var == 0 {
            self.w = value;
        } else {
            self.d[var - 1] = value;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w == 0 && self.d.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, s: i64) -> Self {
        Self {
            w: self.w * s,
            d: self.d.iter().map(|x| x * s).collect(),
        }
    }

    pub fn as_vec(&self) -> Vec<i64> {
        std::iter::once(self.w).chain(self.d.iter().copied()).collect()
    }

    pub fn from_slice(v: &[i64]) -> Self {
        Self {
            w: v[0],
            d: v[1..].to_vec(),
        }
    }
}

impl Add for &ExtExponent {
    type Output = ExtExponent;
    fn add(self, rhs: &ExtExponent) -> ExtExponent {
        ExtExponent {
            w: self.w + rhs.w,
            d: self.d.iter().zip(&rhs.d).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExtExponent {
    type Output = ExtExponent;
    fn sub(self, rhs: &ExtExponent) -> ExtExponent {
        ExtExponent {
            w: self.w - rhs.w,
            d: self.d.iter().zip(&rhs.d).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExtExponent {
    type Output = ExtExponent;
    fn neg(self) -> ExtExponent {
        self.scale(-1)
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(w={}; d=", self.w)?;
        for (i, x) in self.d.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Positive integer weights `g0..gk` used for total-grade truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading(Vec<i64>);

impl Grading {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Config("grading needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| w < 1) {
            return Err(Error::Config(format!("grading weight {w} is not positive")));
        }
        Ok(Self(weights))
    }

    pub fn uniform(k: usize) -> Self {
        Self(vec![1; k + 1])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn weight(&self, var: usize) -> i64 {
        self.0[var]
    }

    pub fn grade(&self, e: &ExtExponent) -> i64 {
        self.0[0] * e.w + self.0[1..].iter().zip(&e.d).map(|(g, d)| g * d).sum::<i64>()
    }

    /// Grade of a closed class `d`, ignoring the open weight.
    pub fn closed_grade(&self, d: &[i64]) -> i64 {
        self.0[1..].iter().zip(d).map(|(g, d)| g * d).sum()
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

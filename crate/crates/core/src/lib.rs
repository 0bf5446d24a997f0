//! Exact computation of disk amplitudes for framed branes in toric Calabi-Yau threefolds.
//!
//! Three independent pipelines compute the same generating function: the B-model
//! superpotential ([`bmodel`]), the A-model hypergeometric series ([`amodel`]) and the
//! Abel-Jacobi map of the mirror curve ([`curve`]). Supporting modules cover mirror maps,
//! GKZ operators and partition characters.

pub mod amodel;
pub mod bmodel;
pub mod catalog;
pub mod curve;
pub mod error;
pub mod gkz;
pub mod io;
pub mod linalg;
pub mod mirror;
pub mod partitions;
pub mod series;
pub mod toric;

pub use error::{Error, Result};
pub use series::{ExtExponent, Grading, LogSeries, TruncatedSeries};
pub use toric::{BraneKind, BraneSpec, ToricCY3};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `p/q` as a [`Rational`].
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

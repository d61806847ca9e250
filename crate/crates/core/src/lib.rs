//! Zeta functions of varieties over finite fields by exhaustive point
//! counting, with exact checks of the Weil conjectures.

pub mod algebra;
pub mod charsum;
pub mod counting;
pub mod error;
pub mod ffield;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod weil;
pub mod zeta;

pub use error::{Error, ErrorKind, Result};

/// Exact rationals used by all verdict-bearing computations.
pub type Rational = num_rational::BigRational;
/// Exact truncated power series.
pub type Series = algebra::TruncatedSeries<Rational>;
/// Floating-point truncated power series.
pub type FloatSeries = algebra::TruncatedSeries<f64>;
/// Univariate polynomial over the rationals.
pub type QPoly = algebra::Poly<Rational>;

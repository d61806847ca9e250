//! Exact algebra: multivariate polynomials over finite fields, univariate
//! polynomials over Z and over a field scalar, truncated power series, and
//! dense linear algebra.

mod charpoly;
pub mod linalg;
mod multipoly;
mod poly;
mod series;

pub use charpoly::{charpoly_series_oracle, det_one_minus_t};
pub use multipoly::{mp_eval, MultiPoly};
pub use poly::{IntPoly, Poly};
pub use series::TruncatedSeries;

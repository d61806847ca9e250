//! Zeta functions from point counts: the exponential and Euler-product
//! series, a Hankel-determinant rationality test, and exact Padé
//! reconstruction of `Z(t) = P(t)/Q(t)` with integer coefficients.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{linalg, IntPoly, Poly, TruncatedSeries};
use crate::counting::{ClosedPointCensus, CountTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// `exp(Σ_{n=1}^m N_n t^n / n)`.
pub fn zeta_series<S: Scalar>(t: &CountTable, m: usize) -> Result<TruncatedSeries<S>> {
    if t.depth() < m {
        return Err(Error::InsufficientOrder {
            needed: m,
            have: t.depth(),
        });
    }
    let log = TruncatedSeries::from_fn(m, |n| {
        if n == 0 {
            S::zero()
        } else {
            S::from_i64(t.counts[n - 1] as i64) / S::from_i64(n as i64)
        }
    });
    log.exp()
}

/// `∏_{d ≤ m} (1 − t^d)^{−a_d}` truncated at `m`.
pub fn euler_product_series<S: Scalar>(c: &ClosedPointCensus, m: usize) -> Result<TruncatedSeries<S>> {
    if c.depth() < m {
        return Err(Error::InsufficientOrder {
            needed: m,
            have: c.depth(),
        });
    }
    (1..=m).try_fold(TruncatedSeries::one(m), |acc, d| {
        acc.mul(&TruncatedSeries::cyclotomic_power_inverse(d, c.degrees[d - 1], m))
    })
}

/// Series order needed to test a `(deg P ≤ num, deg Q ≤ den)` window.
pub fn window_order(num: usize, den: usize) -> usize {
    num + 2 * den + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Rationality {
    RationalWithinWindow { num: usize, den: usize },
    NoRationalFit { max_num: usize, max_den: usize },
}

/// Degree pairs in sweep order: smaller `num + den` first, then smaller `den`.
fn sweep_order(pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = pairs.into_iter().collect();
    v.sort_by_key(|&(n, d)| (n + d, d));
    v
}

/// Whether every Hankel determinant `det(c_{k+i+j})_{0≤i,j≤den}` with
/// `k ≥ num + 1 − den` that fits in the series vanishes (`c_i = 0` for `i < 0`).
fn hankel_vanishes<S: Scalar>(s: &TruncatedSeries<S>, num: usize, den: usize) -> bool {
    let c = |i: i64| if i < 0 { S::zero() } else { s.coeff(i as usize).clone() };
    let first = num as i64 + 1 - den as i64;
    let last = s.order() as i64 - 2 * den as i64;
    (first..=last).all(|k| {
        let h: Vec<Vec<S>> = (0..=den as i64)
            .map(|i| (0..=den as i64).map(|j| c(k + i + j)).collect())
            .collect();
        linalg::determinant(h).is_zero()
    })
}

/// Smallest `(deg P, deg Q)` inside the window for which the Hankel
/// determinants vanish and a Padé fit verifies against every known
/// coefficient. `NoRationalFit` only rules out fits inside the window.
pub fn hankel_rationality<S: Scalar>(
    s: &TruncatedSeries<S>,
    max_num: usize,
    max_den: usize,
) -> Result<Rationality> {
    let needed = window_order(max_num, max_den);
    if s.order() < needed {
        return Err(Error::InsufficientOrder {
            needed,
            have: s.order(),
        });
    }
    for (num, den) in sweep_order((0..=max_num).flat_map(|n| (0..=max_den).map(move |d| (n, d)))) {
        if hankel_vanishes(s, num, den) && pade(s, num, den).is_some() {
            return Ok(Rationality::RationalWithinWindow { num, den });
        }
    }
    Ok(Rationality::NoRationalFit { max_num, max_den })
}

/// Every window that a series of this order can test honestly.
pub fn full_window(order: usize) -> Vec<(usize, usize)> {
    (0..=order / 2)
        .filter(|&d| window_order(0, d) <= order)
        .map(|d| (order - 2 * d - 1, d))
        .collect()
}

/// Smallest fit over all windows testable at the series' order.
pub fn discover_degrees<S: Scalar>(s: &TruncatedSeries<S>) -> Option<(usize, usize)> {
    if s.order() == 0 {
        return None;
    }
    let pairs = full_window(s.order())
        .into_iter()
        .flat_map(|(mn, d)| (0..=mn).map(move |n| (n, d)));
    sweep_order(pairs)
        .into_iter()
        .find(|&(n, d)| hankel_vanishes(s, n, d) && pade(s, n, d).is_some())
}

/// Padé fit `P/Q` with `Q(0) = 1`, `deg P ≤ num`, `deg Q ≤ den`, matching
/// every coefficient of `s`; `None` if the linear system is inconsistent.
pub fn pade<S: Scalar>(s: &TruncatedSeries<S>, num: usize, den: usize) -> Option<(Poly<S>, Poly<S>)> {
    let m = s.order();
    let c = |i: usize, j: usize| if j > i { S::zero() } else { s.coeff(i - j).clone() };
    // c_k + Σ_{j=1}^{den} q_j c_{k−j} = 0 for num < k ≤ m.
    let rows: Vec<Vec<S>> = (num + 1..=m).map(|k| (1..=den).map(|j| c(k, j)).collect()).collect();
    let rhs: Vec<S> = (num + 1..=m).map(|k| -c(k, 0)).collect();
    let tail = if den == 0 {
        rhs.iter().all(Zero::is_zero).then(Vec::new)?
    } else if rows.is_empty() {
        vec![S::zero(); den]
    } else {
        linalg::solve(&rows, &rhs)?
    };
    let mut qc = vec![S::one()];
    qc.extend(tail);
    let pc: Vec<S> = (0..=num.min(m))
        .map(|k| {
            (0..=k.min(den))
                .map(|j| qc[j].clone() * c(k, j))
                .fold(S::zero(), |a, b| a + b)
        })
        .collect();
    Some((Poly::new(pc), Poly::new(qc)))
}

/// `Z(t) = P(t)/Q(t)` with integer coefficients, constant terms 1, coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFn {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl RationalFn {
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Result<Self> {
        for (name, p) in [("numerator", &numerator), ("denominator", &denominator)] {
            if !p.coeff(0).is_one() {
                return Err(Error::Invalid(format!("{name} must have constant term 1")));
            }
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn one() -> Self {
        Self {
            numerator: IntPoly::one(),
            denominator: IntPoly::one(),
        }
    }

    /// `χ = deg Q − deg P`.
    pub fn chi(&self) -> i64 {
        self.denominator.degree_or_zero() as i64 - self.numerator.degree_or_zero() as i64
    }

    pub fn expand(&self, order: usize) -> Result<TruncatedSeries<Rational>> {
        let lift = |p: &IntPoly| TruncatedSeries::new(p.to_rational().coeffs().to_vec(), order);
        lift(&self.numerator).mul(&lift(&self.denominator).inverse()?)
    }

    /// `N_n` for `n = 1..=m` read back from the logarithmic derivative.
    pub fn predicted_counts(&self, m: usize) -> Result<Vec<Rational>> {
        let log = self.expand(m)?.log()?;
        Ok((1..=m)
            .map(|n| log.coeff(n).clone() * Rational::from_i64(n as i64))
            .collect())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Exact reconstruction with the given degree bounds: Padé solve, gcd
/// reduction, integrality check, and multiply-back verification.
pub fn reconstruct_rational(s: &TruncatedSeries<Rational>, num: usize, den: usize) -> Result<RationalFn> {
    if s.order() < num + den {
        return Err(Error::InsufficientOrder {
            needed: num + den,
            have: s.order(),
        });
    }
    if !s.coeff(0).is_one() {
        return Err(Error::ConstantTerm {
            op: "reconstruction",
            expected: "1",
        });
    }
    let (p, q) = pade(s, num, den).ok_or(Error::NoRationalFit { num, den })?;
    let g = p.gcd(&q);
    let (p, q) = if g.degree().unwrap_or(0) > 0 {
        (p.divrem(&g).0, q.divrem(&g).0)
    } else {
        (p, q)
    };
    // gcd division keeps Q(0) ≠ 0; renormalize constant terms to 1.
    let q0 = q.coeff(0);
    let (p, q) = (p.scale(&(Rational::one() / q0.clone())), q.scale(&(Rational::one() / q0)));
    let check = |part: &'static str, x: &Poly<Rational>| {
        IntPoly::from_rational(x).map_err(|(index, value)| Error::IntegralityViolation {
            part,
            index,
            value: value.to_string(),
        })
    };
    let numerator = check("numerator", &p)?;
    let denominator = check("denominator", &q)?;
    let z = RationalFn::new(numerator, denominator)?;
    if z.expand(s.order())? != *s {
        return Err(Error::NoRationalFit { num, den });
    }
    Ok(z)
}

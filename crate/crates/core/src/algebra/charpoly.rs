//! Trace/determinant identity for integer matrices:
//! `log det(1 − tM)^{−1} = Σ_{n≥1} Tr(M^n) t^n / n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPoly;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// `det(I − tM)` over Z[t] by fraction-free (Bareiss) elimination.
///
/// Every leading principal minor of `I − tM` has constant term 1, so the
/// pivots never vanish and each Bareiss division is an exact division by a
/// polynomial with unit constant term.
pub fn det_one_minus_t(m: &[Vec<BigInt>]) -> Result<IntPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut a: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c0 = if i == j { BigInt::one() } else { BigInt::zero() };
                    IntPoly::new(vec![c0, -m[i][j].clone()])
                })
                .collect()
        })
        .collect();
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .exact_div_unit_constant(&prev)
                    .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].clone())
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Both sides of the trace/determinant identity to order `order`:
/// `lhs = log(1 / det(I − tM))`, `rhs = Σ_{n=1}^{order} Tr(M^n) t^n / n`.
pub fn charpoly_series_oracle(
    m: &[Vec<BigInt>],
    order: usize,
) -> Result<(TruncatedSeries<Rational>, TruncatedSeries<Rational>)> {
    let det = det_one_minus_t(m)?;
    let det_series = TruncatedSeries::new(
        det.coeffs().iter().map(Rational::from_bigint).collect(),
        order,
    );
    let lhs = det_series.inverse()?.log()?;

    let n = m.len();
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rhs = vec![Rational::zero()];
    for k in 1..=order {
        power = mat_mul(&power, m);
        let trace: BigInt = (0..n).map(|i| power[i][i].clone()).sum();
        rhs.push(Rational::new(trace, BigInt::from(k)));
    }
    Ok((lhs, TruncatedSeries::new(rhs, order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn m(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_one_minus_t(&m(&[&[1, 1], &[0, 2]])).unwrap(), IntPoly::from_i64s(&[1, -3, 2]));
        assert_eq!(det_one_minus_t(&m(&[&[0, 0], &[0, 0]])).unwrap(), IntPoly::one());
        // Companion matrix of x^2 - x - 1: det(I - tM) = 1 - t - t^2.
        assert_eq!(det_one_minus_t(&m(&[&[0, 1], &[1, 1]])).unwrap(), IntPoly::from_i64s(&[1, -1, -1]));
        assert!(det_one_minus_t(&m(&[&[1, 2]])).is_err());
    }

    #[test]
    fn identity_examples() {
        let (l, r) = charpoly_series_oracle(&m(&[&[1]]), 6).unwrap();
        assert_eq!(l, r);
        for n in 1..=6 {
            assert_eq!(*r.coeff(n), Rational::new(1.into(), BigInt::from(n as i64)));
        }

        let (l, r) = charpoly_series_oracle(&m(&[&[0, 0], &[0, 0]]), 6).unwrap();
        assert_eq!(l, TruncatedSeries::zero(6));
        assert_eq!(r, TruncatedSeries::zero(6));

        let (l, r) = charpoly_series_oracle(&m(&[&[1, 1], &[0, 2]]), 6).unwrap();
        assert_eq!(l, r);
        for n in 1..=6usize {
            // Upper-triangular: M^n has diagonal (1, 2^n).
            let expect = Rational::new(BigInt::from(1 + (1i64 << n)), BigInt::from(n as i64));
            assert_eq!(*r.coeff(n), expect);
        }
    }

    #[test]
    fn identity_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(1..=4);
            let mat: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let (l, r) = charpoly_series_oracle(&mat, 10).unwrap();
            assert_eq!(l, r);
        }
    }
}

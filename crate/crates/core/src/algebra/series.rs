use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Power series `c_0 + c_1 t + … + c_m t^m` known modulo `t^{m+1}`.
///
/// The truncation order `m` is part of the value: binary operations on
/// series of different orders are errors, never silent truncations.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// Series of order `order` from leading coefficients; missing ones are
    /// zero, extra ones are dropped.
    pub fn new(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> S) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![S::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    /// Same series known to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order");
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.order();
        let mut out = vec![S::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::ConstantTerm {
                op: "inverse",
                expected: "nonzero",
            });
        }
        let m = self.order();
        let mut out: Vec<S> = Vec::with_capacity(m + 1);
        out.push(S::one() / c0.clone());
        for n in 1..=m {
            let mut acc = S::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc / c0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(a)` for `a_0 = 0`, from `(exp a)' = a' · exp a`:
    /// `n b_n = Σ_{k=1}^{n} k a_k b_{n−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "exp",
                expected: "0",
            });
        }
        let m = self.order();
        let mut b: Vec<S> = Vec::with_capacity(m + 1);
        b.push(S::one());
        for n in 1..=m {
            let mut acc = S::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + S::from_i64(k as i64) * self.coeffs[k].clone() * b[n - k].clone();
            }
            b.push(acc / S::from_i64(n as i64));
        }
        Ok(Self { coeffs: b })
    }

    /// `log(a)` for `a_0 = 1`, from `a' = (log a)' · a`:
    /// `n c_n = n a_n − Σ_{k=1}^{n−1} k c_k a_{n−k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                op: "log",
                expected: "1",
            });
        }
        let m = self.order();
        let mut c: Vec<S> = Vec::with_capacity(m + 1);
        c.push(S::zero());
        for n in 1..=m {
            let mut acc = S::from_i64(n as i64) * self.coeffs[n].clone();
            for k in 1..n {
                if c[k].is_zero() {
                    continue;
                }
                acc = acc - S::from_i64(k as i64) * c[k].clone() * self.coeffs[n - k].clone();
            }
            c.push(acc / S::from_i64(n as i64));
        }
        Ok(Self { coeffs: c })
    }

    /// `(1 − t^d)^{−e}` to order `m`, for `e ≥ 0`.
    pub fn cyclotomic_power_inverse(d: usize, e: u64, m: usize) -> Self {
        // Coefficient of t^{dj} is C(e + j − 1, j).
        let mut coeffs = vec![S::zero(); m + 1];
        let mut binom = S::one();
        let mut j = 0usize;
        while d * j <= m {
            coeffs[d * j] = binom.clone();
            j += 1;
            binom = binom * S::from_i64((e as i64) + j as i64 - 1) / S::from_i64(j as i64);
        }
        Self { coeffs }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl<S: Scalar + fmt::Display> Serialize for TruncatedSeries<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn rs(v: &[i64], m: usize) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(v.iter().map(|&x| r(x)).collect(), m)
    }

    #[test]
    fn ring_examples() {
        let a = rs(&[1, 1], 2);
        let b = rs(&[1, -1], 2);
        assert_eq!(a.mul(&b).unwrap(), rs(&[1, 0, -1], 2));
        assert_eq!(a.mul(&TruncatedSeries::zero(2)).unwrap(), TruncatedSeries::zero(2));
        let geo = rs(&[1, 1, 1, 1, 1, 1], 5);
        assert_eq!(geo.mul(&rs(&[1, -1], 5)).unwrap(), TruncatedSeries::one(5));
        assert_eq!(a.add(&b).unwrap(), rs(&[2], 2));
        assert_eq!(a.scale(&r(3)), rs(&[3, 3], 2));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(
            rs(&[1], 2).mul(&rs(&[1], 3)),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        );
        assert!(rs(&[1], 2).add(&rs(&[1], 4)).is_err());
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(TruncatedSeries::<Rational>::zero(5).exp().unwrap(), TruncatedSeries::one(5));
        let geo = rs(&[1, 1, 1, 1, 1, 1, 1], 6);
        let lg = geo.log().unwrap();
        for n in 1..=6 {
            assert_eq!(*lg.coeff(n), Rational::new(BigInt::from(1), BigInt::from(n as i64)));
        }
        assert_eq!(lg.exp().unwrap(), geo);

        let s = rs(&[1, 3, 7, 15], 3);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(rs(&[1], 3).exp(), Err(Error::ConstantTerm { op: "exp", .. })));
        assert!(matches!(rs(&[2], 3).log(), Err(Error::ConstantTerm { op: "log", .. })));
        assert!(matches!(rs(&[0, 1], 3).inverse(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn inverse_and_cyclotomic_powers() {
        // 1/((1-t)(1-2t)) = Σ (2^{n+1} - 1) t^n
        let den = rs(&[1, -3, 2], 6);
        let inv = den.inverse().unwrap();
        for n in 0..=6 {
            assert_eq!(*inv.coeff(n), r((1 << (n + 1)) - 1));
        }
        // (1 - t^2)^{-3} = Σ C(j+2, 2) t^{2j}
        let c = TruncatedSeries::<Rational>::cyclotomic_power_inverse(2, 3, 6);
        assert_eq!(c, rs(&[1, 0, 3, 0, 6, 0, 10], 6));
        let direct = rs(&[1, 0, -1], 6).inverse().unwrap();
        let cube = direct.mul(&direct).unwrap().mul(&direct).unwrap();
        assert_eq!(c, cube);
        assert_eq!(
            TruncatedSeries::<Rational>::cyclotomic_power_inverse(1, 0, 4),
            TruncatedSeries::one(4)
        );
    }

    #[test]
    fn float_instantiation() {
        let s = TruncatedSeries::<f64>::new(vec![0.0, 1.0], 8);
        let e = s.exp().unwrap();
        let mut fact = 1.0;
        for n in 0..=8 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff(n) - 1.0 / fact).abs() < 1e-15);
        }
    }

    fn arb_unit_series() -> impl Strategy<Value = TruncatedSeries<Rational>> {
        prop::collection::vec((-20i64..20, 1i64..6), 12).prop_map(|v| {
            let mut coeffs: Vec<Rational> = v
                .into_iter()
                .map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
                .collect();
            coeffs[0] = r(1);
            TruncatedSeries::new(coeffs, 12)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn exp_inverts_log(s in arb_unit_series()) {
            prop_assert_eq!(s.log().unwrap().exp().unwrap(), s.clone());
            let inv = s.inverse().unwrap();
            prop_assert_eq!(s.mul(&inv).unwrap(), TruncatedSeries::one(12));
            // log turns products into sums.
            let sq = s.mul(&s).unwrap();
            prop_assert_eq!(sq.log().unwrap(), s.log().unwrap().scale(&r(2)));
        }
    }
}

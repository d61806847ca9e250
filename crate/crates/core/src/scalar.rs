//! Scalar traits shared by the generic series, linear algebra and
//! root-finding code.
//!
//! Exact work runs over [`BigRational`]; `f64`/`f32` instantiate the same
//! code for quick floating-point experiments. Verdicts in this crate are only
//! ever drawn from the exact instantiation.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, Num, ToPrimitive};

/// A field scalar usable by the series and linear-algebra routines.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    /// Whether equality tests on this type are exact.
    const EXACT: bool;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    const EXACT: bool = true;
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_i64(v: i64) -> Self {
                v as $f
            }
            fn from_bigint(v: &BigInt) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $f
            }
            const EXACT: bool = false;
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

/// Floating-point type for root finding and character sums.
pub trait Real: Float + FloatConst + Debug + Send + Sync + 'static {
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// Compensated (Kahan) accumulator for complex sums.
#[derive(Clone, Copy, Debug)]
pub struct KahanSum<F: Real> {
    sum: Complex<F>,
    carry: Complex<F>,
}

impl<F: Real> Default for KahanSum<F> {
    fn default() -> Self {
        Self {
            sum: Complex::new(F::zero(), F::zero()),
            carry: Complex::new(F::zero(), F::zero()),
        }
    }
}

impl<F: Real> KahanSum<F> {
    pub fn add(&mut self, v: Complex<F>) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex<F> {
        self.sum
    }
}

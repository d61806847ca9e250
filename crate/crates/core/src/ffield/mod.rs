//! Finite fields F_{p^k} as F_p[x]/(f) with a fixed irreducible modulus `f`.
//!
//! Moduli are chosen deterministically by [`find_irreducible`], so every run
//! (and every machine) builds the same model of each field. [`LogField`] adds
//! discrete-log tables for the enumeration hot loops.

mod fp_poly;
mod tables;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

pub use tables::{LogField, LOG_ZERO};

pub(crate) use fp_poly::{add_mod, mul_mod, sub_mod};

/// Default cap on the number of elements or candidate points enumerated.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) || p.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while (d as u128) * (d as u128) <= p as u128 {
        if p.is_multiple_of(d) || p.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`
/// over F_p, ordering coefficient vectors `(c_0, …, c_{k−1})` with the
/// constant term most significant. Returned little-endian, monic, length
/// `k + 1`. Degree 1 yields `x`.
pub fn find_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidDegree(k));
    }
    let mut low = vec![0u64; k];
    loop {
        let mut f = low.clone();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return Ok(f);
        }
        // Odometer with c_{k-1} running fastest.
        let mut i = k;
        loop {
            if i == 0 {
                return Err(Error::Internal(format!(
                    "no irreducible polynomial of degree {k} over F_{p}"
                )));
            }
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}

/// The field F_{p^k}: prime, degree and modulus. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl FieldCtx {
    /// Builds a field from an explicit modulus, verifying primality of `p`
    /// and that the modulus is monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp_poly::trim(&mut m);
        let k = match fp_poly::degree(&m) {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::BadModulus { p, degree: 0 }),
        };
        if m[k] != 1 || !fp_poly::is_irreducible(&m, p) {
            return Err(Error::BadModulus { p, degree: k });
        }
        Ok(Arc::new(Self { p, k, modulus: m }))
    }

    /// F_{p^k} with the modulus from [`find_irreducible`].
    pub fn new(p: u64, k: usize) -> Result<Arc<Self>> {
        let modulus = find_irreducible(p, k)?;
        Ok(Arc::new(Self { p, k, modulus }))
    }

    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(p, 1)
    }

    /// The field with `q` elements; `q` must be a prime power.
    pub fn of_order(q: u64) -> Result<Arc<Self>> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q))?;
        let (mut rest, mut k) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::Invalid(format!("{q} is not a prime power")));
        }
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^k`, or `None` if it does not fit in 64 bits.
    pub fn size(&self) -> Option<u64> {
        let k = u32::try_from(self.k).ok()?;
        self.p.checked_pow(k)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(self),
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = v.rem_euclid(self.p as i64) as u64;
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// The residue `c mod p` as an element.
    pub fn constant(self: &Arc<Self>, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = c % self.p;
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// Element from a little-endian coefficient vector; entries are reduced
    /// mod p and the vector may be shorter than `k`.
    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.k {
            return Err(Error::Invalid(format!(
                "coefficient vector of length {} for a degree-{} field",
                coeffs.len(),
                self.k
            )));
        }
        let mut v = vec![0; self.k];
        for (slot, &c) in v.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        Ok(FieldElement {
            ctx: Arc::clone(self),
            coeffs: v,
        })
    }

    /// The class of `x` (for `k = 1` this is `0`, following the `x − 0`
    /// modulus convention).
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.k == 1 {
            return self.zero();
        }
        let mut coeffs = vec![0; self.k];
        coeffs[1] = 1;
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// Element with little-endian base-p index `Σ c_i p^i`.
    pub fn from_index(self: &Arc<Self>, mut index: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        for c in coeffs.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// All `p^k` elements, each once, in lexicographic order of
    /// `(c_0, …, c_{k−1})` with `c_0` most significant.
    pub fn enumerate(
        self: &Arc<Self>,
        budget: u64,
    ) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let size = self.size().filter(|&s| s <= budget).ok_or_else(|| {
            Error::BudgetExceeded {
                required: (self.p as u128).saturating_pow(self.k as u32),
                budget,
            }
        })?;
        let p = self.p;
        let k = self.k;
        Ok((0..size).map(move |mut n| {
            let mut coeffs = vec![0; k];
            for c in coeffs.iter_mut().rev() {
                *c = n % p;
                n /= p;
            }
            FieldElement {
                ctx: Arc::clone(self),
                coeffs,
            }
        }))
    }
}

/// An element of F_{p^k}: `k` residues mod p, little-endian in the class
/// of `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "g")?,
                (1, _) => write!(f, "{c}g")?,
                (_, 1) => write!(f, "g^{i}")?,
                _ => write!(f, "{c}g^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FieldElement {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Little-endian base-p index `Σ c_i p^i`.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.ctx.p + c)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u64>) -> Self {
        Self {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    fn padded(&self, mut v: Vec<u64>) -> Self {
        v.resize(self.ctx.k, 0);
        self.with_coeffs(v)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.ctx.p;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.ctx.p;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            return Ok(self.with_coeffs(vec![mul_mod(self.coeffs[0], other.coeffs[0], p)]));
        }
        let prod = fp_poly::mul_rem(&self.coeffs, &other.coeffs, &self.ctx.modulus, p);
        Ok(self.padded(prod))
    }

    pub fn neg(&self) -> Self {
        let p = self.ctx.p;
        self.with_coeffs(self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect())
    }

    /// Multiplicative inverse by extended Euclid against the modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            return Ok(self.with_coeffs(vec![fp_poly::inv_mod(self.coeffs[0], p)]));
        }
        let inv = fp_poly::inverse_rem(&self.coeffs, &self.ctx.modulus, p)
            .ok_or_else(|| Error::Internal("modulus is not irreducible".into()))?;
        Ok(self.padded(inv))
    }

    /// `self^exp` by square-and-multiply.
    pub fn pow(&self, exp: u128) -> Self {
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            let e = if exp == 0 {
                0
            } else {
                // Reduce by Fermat; 0^e stays 0 for e > 0.
                ((exp - 1) % (p as u128 - 1) + 1) as u64
            };
            return self.with_coeffs(vec![fp_poly::pow_mod(self.coeffs[0], e, p)]);
        }
        let r = fp_poly::pow_rem(&self.coeffs, exp, &self.ctx.modulus, p);
        self.padded(r)
    }

    /// `self^{p^power}`.
    pub fn frobenius(&self, power: u32) -> Self {
        let mut x = self.clone();
        for _ in 0..power {
            x = x.pow(self.ctx.p as u128);
        }
        x
    }

    /// Absolute trace `Σ_{i<k} x^{p^i}`, an element of F_p.
    pub fn trace_to_prime(&self) -> u64 {
        let p = self.ctx.p;
        let mut acc = self.clone();
        let mut conj = self.clone();
        for _ in 1..self.ctx.k {
            conj = conj.frobenius(1);
            acc = acc.try_add(&conj).expect("same field");
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0] % p
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field context mismatch")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$try(&rhs).expect("field context mismatch")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

/// A field embedding F_{p^a} ↪ F_{p^{an}} fixed by the image of the
/// source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<FieldCtx>,
    target: Arc<FieldCtx>,
    image: FieldElement,
}

impl Embedding {
    /// Sends the source generator to the lexicographically smallest root of
    /// the source modulus in the target (exhaustive search). Embedding a
    /// field into itself is the identity.
    pub fn new(source: &Arc<FieldCtx>, target: &Arc<FieldCtx>) -> Result<Self> {
        let bad = || Error::BadEmbedding {
            p: source.p,
            from: source.k,
            target_p: target.p,
            target: target.k,
        };
        if source.p != target.p || !target.k.is_multiple_of(source.k) {
            return Err(bad());
        }
        let image = if source == target {
            target.generator()
        } else if source.k == 1 {
            target.zero()
        } else {
            let size = target
                .size()
                .ok_or(Error::BudgetExceeded {
                    required: u128::MAX,
                    budget: u64::MAX,
                })?;
            target
                .enumerate(size)?
                .find(|r| eval_fp_poly(&source.modulus, r).is_zero())
                .ok_or_else(|| Error::Internal("source modulus has no root in target".into()))?
        };
        Ok(Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            image,
        })
    }

    pub fn source(&self) -> &Arc<FieldCtx> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldCtx> {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image
    }

    pub fn map(&self, x: &FieldElement) -> Result<FieldElement> {
        if *x.ctx != *self.source {
            return Err(Error::ContextMismatch);
        }
        Ok(eval_fp_poly(&x.coeffs, &self.image))
    }
}

/// Evaluates a polynomial with F_p coefficients at an element.
fn eval_fp_poly(coeffs: &[u64], at: &FieldElement) -> FieldElement {
    let ctx = at.ctx();
    let mut acc = ctx.zero();
    for &c in coeffs.iter().rev() {
        acc = &(&acc * at) + &ctx.constant(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_of_order() {
        let f = FieldCtx::of_order(9).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (3, 2));
        assert!(FieldCtx::of_order(12).is_err());
        assert!(FieldCtx::of_order(1).is_err());
    }

    fn f4() -> Arc<FieldCtx> {
        FieldCtx::new(2, 2).unwrap()
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        // x^3 + x^2 + 1 precedes x^3 + x + 1 when c_0, c_1 are compared first.
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 0, 1, 1]);
        assert!(matches!(find_irreducible(4, 2), Err(Error::NotPrime(4))));
        assert!(matches!(find_irreducible(3, 0), Err(Error::InvalidDegree(0))));
    }

    #[test]
    fn smallest_quadratic_over_f3_matches_root_search() {
        // Oracle: walk all 9 monic quadratics in (c0, c1) lex order and keep
        // the first one with no root in F_3.
        let oracle = (0..3u64)
            .flat_map(|c0| (0..3u64).map(move |c1| (c0, c1)))
            .find(|&(c0, c1)| (0..3u64).all(|x| (c0 + c1 * x + x * x) % 3 != 0))
            .unwrap();
        assert_eq!(oracle, (1, 0));
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![oracle.0, oracle.1, 1]);
    }

    #[test]
    fn find_irreducible_is_reproducible() {
        for (p, k) in [(2, 8), (3, 5), (5, 4), (101, 2)] {
            assert_eq!(find_irreducible(p, k).unwrap(), find_irreducible(p, k).unwrap());
        }
    }

    #[test]
    fn basic_arithmetic() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert!((&f2.one() + &f2.one()).is_zero());

        let f = f4();
        let g = f.generator();
        assert_eq!(&g * &g, &g + &f.one());

        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.from_int(3).inv().unwrap(), f5.from_int(2));
        assert_eq!(f5.zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = FieldCtx::prime(5).unwrap().one();
        let b = FieldCtx::prime(7).unwrap().one();
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn explicit_modulus_validation() {
        assert!(FieldCtx::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FieldCtx::with_modulus(6, vec![1, 1]).is_err());
        assert!(FieldCtx::with_modulus(3, vec![1, 0, 2]).is_err()); // not monic
        let ctx = FieldCtx::with_modulus(3, vec![2, 1, 1]).unwrap();
        assert_eq!(ctx.degree(), 2);
    }

    #[test]
    fn frobenius_examples() {
        let f = f4();
        let g = f.generator();
        let conj = g.frobenius(1);
        assert_eq!(conj, &g + &f.one());
        assert_eq!(conj.frobenius(1), g);
        let f7 = FieldCtx::prime(7).unwrap();
        for x in f7.enumerate(100).unwrap() {
            assert_eq!(x.frobenius(1), x);
        }
    }

    #[test]
    fn trace_examples() {
        let f = f4();
        assert_eq!(f.generator().trace_to_prime(), 1);
        assert_eq!(f.one().trace_to_prime(), 0);
        let f11 = FieldCtx::prime(11).unwrap();
        assert_eq!(f11.from_int(7).trace_to_prime(), 7);
    }

    #[test]
    fn exhaustive_field_laws_small_fields() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (2, 4), (5, 2), (7, 2), (2, 8), (3, 4)] {
            let ctx = FieldCtx::new(p, k).unwrap();
            let q = ctx.size().unwrap();
            assert!(q <= 256);
            let elems: Vec<_> = ctx.enumerate(q).unwrap().collect();
            let mut hits = vec![0u32; p as usize];
            for x in &elems {
                assert_eq!(x.pow(q as u128), *x, "x^q = x in F_{p}^{k}");
                assert_eq!(x.frobenius(k as u32), *x);
                hits[x.trace_to_prime() as usize] += 1;
                if !x.is_zero() {
                    assert!((x * &x.inv().unwrap()).is_one());
                }
            }
            // Trace is surjective and balanced: each residue is hit p^{k-1} times.
            assert!(hits.iter().all(|&h| h as u64 == q / p));
            // Additivity on a sample of pairs.
            for x in elems.iter().step_by(7) {
                for y in elems.iter().step_by(5) {
                    assert_eq!(
                        (x + y).trace_to_prime(),
                        (x.trace_to_prime() + y.trace_to_prime()) % p
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_order_and_budget() {
        let f2 = FieldCtx::prime(2).unwrap();
        let v: Vec<_> = f2.enumerate(10).unwrap().map(|x| x.coeffs()[0]).collect();
        assert_eq!(v, vec![0, 1]);

        let f = f4();
        let v: Vec<_> = f.enumerate(10).unwrap().collect();
        assert_eq!(v.len(), 4);
        let distinct: std::collections::HashSet<_> = v.iter().cloned().collect();
        assert_eq!(distinct.len(), 4);
        assert_eq!(v[1], f.generator());

        let f9 = FieldCtx::new(3, 2).unwrap();
        let elems: Vec<_> = f9.enumerate(9).unwrap().collect();
        assert_eq!(elems.len(), 9);
        let prod = elems
            .iter()
            .filter(|x| !x.is_zero())
            .fold(f9.one(), |acc, x| &acc * x);
        assert_eq!(prod, f9.from_int(-1));

        assert!(matches!(
            FieldCtx::new(2, 10).unwrap().enumerate(1000),
            Err(Error::BudgetExceeded { required: 1024, budget: 1000 })
        ));
    }

    #[test]
    fn embeddings() {
        let f3 = FieldCtx::prime(3).unwrap();
        let f27 = FieldCtx::new(3, 3).unwrap();
        let e = Embedding::new(&f3, &f27).unwrap();
        assert_eq!(e.map(&f3.from_int(2)).unwrap(), f27.from_int(2));

        let f = f4();
        let f16 = FieldCtx::new(2, 4).unwrap();
        let e = Embedding::new(&f, &f16).unwrap();
        let r = e.image_of_generator();
        assert!((&(r * r) + &(r + &f16.one())).is_zero());
        // r is the first root in enumeration order.
        let first = f16
            .enumerate(16)
            .unwrap()
            .find(|y| (&(y * y) + &(y + &f16.one())).is_zero())
            .unwrap();
        assert_eq!(*r, first);

        let id = Embedding::new(&f, &f).unwrap();
        assert_eq!(*id.image_of_generator(), f.generator());

        assert!(Embedding::new(&f16, &f).is_err());
        assert!(Embedding::new(&f3, &f).is_err());
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, a, n) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (5, 2, 2), (2, 3, 2)] {
            let src = FieldCtx::new(p, a).unwrap();
            let dst = FieldCtx::new(p, a * n).unwrap();
            let e = Embedding::new(&src, &dst).unwrap();
            let q = src.size().unwrap();
            for _ in 0..100 {
                let x = src.from_index(rng.gen_range(0..q));
                let y = src.from_index(rng.gen_range(0..q));
                assert_eq!(e.map(&(&x + &y)).unwrap(), &e.map(&x).unwrap() + &e.map(&y).unwrap());
                assert_eq!(e.map(&(&x * &y)).unwrap(), &e.map(&x).unwrap() * &e.map(&y).unwrap());
            }
        }
    }

    #[test]
    fn random_pow_identity_large_field() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ctx = FieldCtx::new(7, 5).unwrap();
        let q = ctx.size().unwrap();
        for _ in 0..50 {
            let x = ctx.from_index(rng.gen_range(0..q));
            assert_eq!(x.pow(q as u128), x);
        }
    }
}

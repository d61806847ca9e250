use std::sync::Arc;

use super::{fp_poly, FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Log-form encoding of zero.
pub const LOG_ZERO: u32 = u32::MAX;

/// Discrete-log (Zech) tables for a whole field.
///
/// Elements are `u32` logs to a fixed primitive element `g`, with
/// [`LOG_ZERO`] for zero. Multiplication is an addition of logs and addition
/// is one lookup in the Zech table `zech[j] = log(1 + g^j)`.
pub struct LogField {
    ctx: Arc<FieldCtx>,
    q: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: u32,
    generator: FieldElement,
}

impl std::fmt::Debug for LogField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LogField")
            .field("ctx", &self.ctx)
            .field("generator", &self.generator)
            .finish()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl LogField {
    /// Builds tables for `ctx`; fails if `p^k` exceeds `budget`.
    pub fn new(ctx: &Arc<FieldCtx>, budget: u64) -> Result<Self> {
        let p = ctx.characteristic();
        let k = ctx.degree();
        let q = ctx
            .size()
            .filter(|&q| q <= budget && q < u32::MAX as u64)
            .ok_or(Error::BudgetExceeded {
                required: (p as u128).saturating_pow(k as u32),
                budget,
            })?;
        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .map(|i| ctx.from_index(i))
            .find(|g| factors.iter().all(|&r| !g.pow((order / r) as u128).is_one()))
            .ok_or_else(|| Error::Internal("no primitive element".into()))?;

        let modulus = ctx.modulus();
        let g = generator.coeffs().to_vec();
        let times_x = k > 1 && g.iter().enumerate().all(|(i, &c)| c == (i == 1) as u64);
        let index_of = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32;

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![LOG_ZERO; q as usize];
        let mut cur = vec![0u64; k];
        cur[0] = 1;
        for (l, slot) in exp.iter_mut().enumerate() {
            let idx = index_of(&cur);
            *slot = idx;
            log[idx as usize] = l as u32;
            if times_x {
                let top = cur[k - 1];
                for i in (1..k).rev() {
                    cur[i] = fp_poly::sub_mod(cur[i - 1], fp_poly::mul_mod(top, modulus[i], p), p);
                }
                cur[0] = fp_poly::sub_mod(0, fp_poly::mul_mod(top, modulus[0], p), p);
            } else if k == 1 {
                cur[0] = fp_poly::mul_mod(cur[0], g[0], p);
            } else {
                let mut next = fp_poly::mul_rem(&cur, &g, modulus, p);
                next.resize(k, 0);
                cur = next;
            }
        }
        if log.iter().skip(1).any(|&l| l == LOG_ZERO) {
            return Err(Error::Internal("generator is not primitive".into()));
        }

        let zech = exp
            .iter()
            .map(|&idx| {
                let c0 = idx as u64 % p;
                let bumped = idx as u64 - c0 + (c0 + 1) % p;
                log[bumped as usize]
            })
            .collect();
        let neg_one = log[(p - 1) as usize];

        Ok(Self {
            ctx: Arc::clone(ctx),
            q: q as u32,
            order: order as u32,
            exp,
            log,
            zech,
            neg_one,
            generator,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q − 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO || b == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a as u64 + b as u64;
        if s >= self.order as u64 {
            (s - self.order as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO {
            return b;
        }
        if b == LOG_ZERO {
            return a;
        }
        let d = if b >= a { b - a } else { b + (self.order - a) };
        let z = self.zech[d as usize];
        if z == LOG_ZERO {
            LOG_ZERO
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        match a {
            LOG_ZERO => None,
            0 => Some(0),
            _ => Some(self.order - a),
        }
    }

    /// `a^e`.
    #[inline]
    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if a == LOG_ZERO {
            return if e == 0 { 0 } else { LOG_ZERO };
        }
        ((a as u64 * e as u64) % self.order as u64) as u32
    }

    /// Log form of the residue `c` (mod p).
    pub fn constant(&self, c: u64) -> u32 {
        self.log[(c % self.ctx.characteristic()) as usize]
    }

    /// Little-endian base-p index of a log-form element.
    #[inline]
    pub fn index_of(&self, a: u32) -> u32 {
        if a == LOG_ZERO {
            0
        } else {
            self.exp[a as usize]
        }
    }

    #[inline]
    pub fn from_index(&self, idx: u32) -> u32 {
        self.log[idx as usize]
    }

    pub fn from_element(&self, x: &FieldElement) -> Result<u32> {
        if **x.ctx() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.log[x.index() as usize])
    }

    pub fn to_element(&self, a: u32) -> FieldElement {
        self.ctx.from_index(self.index_of(a) as u64)
    }

    /// Every element in log form: zero first, then `g^0, g^1, …`.
    pub fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        std::iter::once(LOG_ZERO).chain(0..self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldCtx;

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (2, 4), (3, 3), (5, 2), (7, 2), (13, 1), (2, 6)] {
            let ctx = FieldCtx::new(p, k).unwrap();
            let lf = LogField::new(&ctx, 1 << 20).unwrap();
            let elems: Vec<_> = ctx.enumerate(1 << 20).unwrap().collect();
            for x in &elems {
                let lx = lf.from_element(x).unwrap();
                assert_eq!(lf.to_element(lx), *x);
                assert_eq!(lf.to_element(lf.neg(lx)), -x);
                for y in elems.iter().step_by(3) {
                    let ly = lf.from_element(y).unwrap();
                    assert_eq!(lf.to_element(lf.add(lx, ly)), x + y);
                    assert_eq!(lf.to_element(lf.mul(lx, ly)), x * y);
                    assert_eq!(lf.to_element(lf.sub(lx, ly)), x - y);
                }
                if let Some(i) = lf.inv(lx) {
                    assert_eq!(lf.to_element(i), x.inv().unwrap());
                }
            }
        }
    }

    #[test]
    fn general_generator_path() {
        // Over F_9 with modulus x^2 + 1 the class of x has order 4, so the
        // slow multiplication path is used.
        let ctx = FieldCtx::new(3, 2).unwrap();
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        let lf = LogField::new(&ctx, 100).unwrap();
        assert_ne!(*lf.generator(), ctx.generator());
        assert_eq!(lf.elements().count(), 9);
    }

    #[test]
    fn respects_budget() {
        let ctx = FieldCtx::new(2, 12).unwrap();
        assert!(matches!(
            LogField::new(&ctx, 1000),
            Err(Error::BudgetExceeded { required: 4096, .. })
        ));
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{Embedding, FieldCtx, FieldElement};

/// Sparse multivariate polynomial over a finite field.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration
/// order (and everything derived from it) is deterministic. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: Arc<FieldCtx>,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(i, &d)| if d == 1 { format!("x{i}") } else { format!("x{i}^{d}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl MultiPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, nvars: usize, c: FieldElement) -> Result<Self> {
        Self::from_terms(ctx, nvars, [(vec![0; nvars], c)])
    }

    /// The coordinate function `x_i`.
    pub fn var(ctx: &Arc<FieldCtx>, nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::Invalid(format!("variable {i} out of range for {nvars} variables")));
        }
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(ctx, nvars, [(e, ctx.one())])
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        ctx: &Arc<FieldCtx>,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Invalid(format!(
                    "exponent vector of length {} in a {nvars}-variable polynomial",
                    e.len()
                )));
            }
            if **c.ctx() != **ctx {
                return Err(Error::ContextMismatch);
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Terms with integer coefficients reduced mod p.
    pub fn from_int_terms(ctx: &Arc<FieldCtx>, nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(
            ctx,
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), ctx.from_int(*c))),
        )
    }

    fn add_term(&mut self, e: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldElement)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Homogeneous part of top total degree.
    pub fn leading_form(&self) -> Self {
        let Some(d) = self.total_degree() else {
            return self.clone();
        };
        Self {
            ctx: Arc::clone(&self.ctx),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &self.ctx.constant(e[i] as u64));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            ctx: Arc::clone(&self.ctx),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Invalid(format!(
                "variable counts differ ({} vs {})",
                self.nvars, other.nvars
            )));
        }
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Pushes every coefficient through `emb`.
    pub fn map_coeffs(&self, emb: &Embedding) -> Result<Self> {
        if **emb.source() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), emb.map(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(emb.target(), self.nvars, terms)
    }

    /// Substitutes `x_i = value` for each `(i, value)`; variable count is
    /// unchanged (substituted variables simply no longer occur).
    pub fn substitute(&self, fixed: &[(usize, FieldElement)]) -> Result<Self> {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut coeff = c.clone();
            for (i, v) in fixed {
                if e2[*i] > 0 {
                    coeff = coeff.try_mul(&v.pow(e2[*i] as u128))?;
                    e2[*i] = 0;
                }
            }
            out.add_term(e2, coeff);
        }
        Ok(out)
    }
}

/// Evaluates `f` at `point`, whose coordinates live in the target field of
/// `emb`; coefficients of `f` are mapped through `emb`. Plain term-by-term
/// summation.
pub fn mp_eval(f: &MultiPoly, point: &[FieldElement], emb: &Embedding) -> Result<FieldElement> {
    if point.len() != f.nvars {
        return Err(Error::Invalid(format!(
            "point has {} coordinates, polynomial has {} variables",
            point.len(),
            f.nvars
        )));
    }
    if **emb.source() != *f.ctx {
        return Err(Error::ContextMismatch);
    }
    let target = emb.target();
    if point.iter().any(|x| **x.ctx() != **target) {
        return Err(Error::ContextMismatch);
    }
    let mut acc = target.zero();
    for (e, c) in &f.terms {
        let mut term = emb.map(c)?;
        for (x, &d) in point.iter().zip(e) {
            if d > 0 {
                term = &term * &x.pow(d as u128);
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        let id = Embedding::new(&f2, &f2).unwrap();
        let f = MultiPoly::from_int_terms(&f2, 2, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert!(mp_eval(&f, &[f2.one(), f2.one()], &id).unwrap().is_zero());

        let f4 = FieldCtx::new(2, 2).unwrap();
        let emb = Embedding::new(&f2, &f4).unwrap();
        let g = MultiPoly::from_int_terms(&f2, 1, &[(&[2], 1), (&[1], 1), (&[0], 1)]).unwrap();
        assert!(mp_eval(&g, &[f4.generator()], &emb).unwrap().is_zero());

        let f5 = FieldCtx::prime(5).unwrap();
        let id5 = Embedding::new(&f5, &f5).unwrap();
        let c = MultiPoly::constant(&f5, 3, f5.from_int(4)).unwrap();
        for x in f5.enumerate(5).unwrap() {
            let pt = vec![x.clone(), x.clone(), f5.from_int(2)];
            assert_eq!(mp_eval(&c, &pt, &id5).unwrap(), f5.from_int(4));
        }
    }

    #[test]
    fn eval_rejects_mismatches() {
        let f3 = FieldCtx::prime(3).unwrap();
        let f5 = FieldCtx::prime(5).unwrap();
        let id3 = Embedding::new(&f3, &f3).unwrap();
        let f = MultiPoly::var(&f3, 2, 0).unwrap();
        assert!(matches!(mp_eval(&f, &[f3.one()], &id3), Err(Error::Invalid(_))));
        assert_eq!(
            mp_eval(&f, &[f5.one(), f5.one()], &id3),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn duplicate_terms_cancel() {
        let f3 = FieldCtx::prime(3).unwrap();
        let f = MultiPoly::from_int_terms(&f3, 1, &[(&[2], 1), (&[2], 2), (&[0], 1)]).unwrap();
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.total_degree(), Some(0));
        assert!(matches!(
            MultiPoly::from_int_terms(&f3, 2, &[(&[1], 1)]),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn structure_queries() {
        let f7 = FieldCtx::prime(7).unwrap();
        // y^2 z - x^3 - z^3
        let f = MultiPoly::from_int_terms(&f7, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[0, 0, 3], -1)])
            .unwrap();
        assert!(f.is_homogeneous());
        assert_eq!(f.total_degree(), Some(3));
        let dx = f.partial_derivative(0);
        assert_eq!(dx.terms().next().unwrap().0, &[2, 0, 0]);
        assert_eq!(*dx.terms().next().unwrap().1, f7.from_int(-3));
        let g = f.try_add(&MultiPoly::var(&f7, 3, 1).unwrap()).unwrap();
        assert!(!g.is_homogeneous());
        assert_eq!(g.leading_form(), f);
        let sq = MultiPoly::var(&f7, 3, 0).unwrap();
        let sq = sq.try_mul(&sq).unwrap();
        assert_eq!(sq.degree_in(0), Some(2));
        let fixed = f.substitute(&[(2, f7.one())]).unwrap();
        assert_eq!(fixed.degree_in(2), Some(0));
    }

    #[test]
    fn mul_matches_pointwise_product() {
        let f5 = FieldCtx::prime(5).unwrap();
        let id = Embedding::new(&f5, &f5).unwrap();
        let a = MultiPoly::from_int_terms(&f5, 2, &[(&[1, 1], 2), (&[0, 2], 3), (&[0, 0], 1)]).unwrap();
        let b = MultiPoly::from_int_terms(&f5, 2, &[(&[3, 0], 4), (&[0, 1], 1)]).unwrap();
        let ab = a.try_mul(&b).unwrap();
        for x in f5.enumerate(5).unwrap() {
            for y in f5.enumerate(5).unwrap() {
                let pt = [x.clone(), y.clone()];
                assert_eq!(
                    mp_eval(&ab, &pt, &id).unwrap(),
                    &mp_eval(&a, &pt, &id).unwrap() * &mp_eval(&b, &pt, &id).unwrap()
                );
            }
        }
    }
}

//! Varieties over F_q, exhaustive point counting over F_{q^n}, and closed
//! points recovered from the counts.

pub mod catalog;
mod engine;
mod input;
pub mod naive;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::ffield::{Embedding, FieldCtx, LogField, DEFAULT_BUDGET};

use engine::{AffineProblem, Coord};

pub use input::{parse_variety, VarietyFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "dim", rename_all = "lowercase")]
pub enum Ambient {
    Affine(usize),
    Projective(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Affine(n) | Ambient::Projective(n) => n,
        }
    }

    /// Number of coordinates of a point.
    pub fn nvars(&self) -> usize {
        match *self {
            Ambient::Affine(n) => n,
            Ambient::Projective(n) => n + 1,
        }
    }

    /// Number of points enumerated over a field with `q_n` elements.
    pub fn candidates(&self, q_n: u64) -> u128 {
        let q = q_n as u128;
        match *self {
            Ambient::Affine(n) => q.saturating_pow(n as u32),
            Ambient::Projective(n) => (0..=n as u32).map(|i| q.saturating_pow(i)).fold(0u128, u128::saturating_add),
        }
    }
}

/// A variety over F_q cut out by polynomial equations in affine or
/// projective space.
///
/// Smoothness is not checked; `smooth` records the author's assertion and
/// downstream reports surface it as an assumption.
#[derive(Clone, Debug)]
pub struct VarietySpec {
    label: String,
    base: Arc<FieldCtx>,
    ambient: Ambient,
    equations: Vec<MultiPoly>,
    dimension: usize,
    smooth: bool,
}

impl VarietySpec {
    /// Validates variable counts, coefficient fields and (for projective
    /// ambients) homogeneity. The dimension defaults to ambient dimension
    /// minus the number of equations.
    pub fn new(
        label: impl Into<String>,
        base: &Arc<FieldCtx>,
        ambient: Ambient,
        equations: Vec<MultiPoly>,
    ) -> Result<Self> {
        let label = label.into();
        for (i, eq) in equations.iter().enumerate() {
            if eq.nvars() != ambient.nvars() {
                return Err(Error::Invalid(format!(
                    "{label}: equation {i} has {} variables, ambient needs {}",
                    eq.nvars(),
                    ambient.nvars()
                )));
            }
            if **eq.ctx() != **base {
                return Err(Error::ContextMismatch);
            }
            if matches!(ambient, Ambient::Projective(_)) && !eq.is_homogeneous() {
                return Err(Error::Invalid(format!("{label}: equation {i} is not homogeneous")));
            }
        }
        let dimension = ambient.dim().saturating_sub(equations.len());
        Ok(Self {
            label,
            base: Arc::clone(base),
            ambient,
            equations,
            dimension,
            smooth: false,
        })
    }

    pub fn with_dimension(mut self, d: usize) -> Self {
        self.dimension = d;
        self
    }

    pub fn with_smooth(mut self, smooth: bool) -> Self {
        self.smooth = smooth;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn smooth_asserted(&self) -> bool {
        self.smooth
    }

    pub fn is_projective(&self) -> bool {
        matches!(self.ambient, Ambient::Projective(_))
    }

    /// `q = |F_q|`.
    pub fn q(&self) -> u64 {
        self.base.size().expect("base field size fits in u64")
    }

    /// Total degrees of the equations (the multidegree of a complete
    /// intersection).
    pub fn degrees(&self) -> Vec<u32> {
        self.equations.iter().map(|e| e.total_degree().unwrap_or(0)).collect()
    }

    /// Field F_{q^n} and the embedding of the base into it.
    pub fn extension(&self, n: u32) -> Result<Embedding> {
        if n == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let target = if n == 1 {
            Arc::clone(&self.base)
        } else {
            FieldCtx::new(self.base.characteristic(), self.base.degree() * n as usize)?
        };
        Embedding::new(&self.base, &target)
    }
}

/// Enumeration limits and parallelism for counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountConfig {
    pub budget: u64,
    /// `None` uses the global rayon pool; `Some(1)` runs sequentially.
    pub threads: Option<usize>,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

impl CountConfig {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    pub fn sequential(self) -> Self {
        Self {
            threads: Some(1),
            ..self
        }
    }
}

/// Candidate count for `#V(F_{q^n})`, checked against the budget.
pub fn required_candidates(v: &VarietySpec, n: u32) -> u128 {
    let q_n = (v.q() as u128).saturating_pow(n);
    if q_n > u64::MAX as u128 {
        return u128::MAX;
    }
    v.ambient.candidates(q_n as u64).max(q_n)
}

/// Per-chunk partial counts of `#V(F_{q^n})`; the chunks partition the
/// enumeration space and `max_chunks` bounds the pieces per sub-problem.
pub fn count_points_partitioned(
    v: &VarietySpec,
    n: u32,
    cfg: &CountConfig,
    max_chunks: u64,
) -> Result<Vec<u64>> {
    let required = required_candidates(v, n);
    if required > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: cfg.budget,
        });
    }
    let emb = v.extension(n)?;
    let field = LogField::new(emb.target(), cfg.budget)?;
    let polys = v
        .equations
        .iter()
        .map(|eq| {
            let mapped = eq.map_coeffs(&emb)?;
            mapped
                .terms()
                .map(|(e, c)| Ok((e.to_vec(), field.from_element(c)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let nvars = v.ambient.nvars();
    let mut parts = Vec::new();
    match v.ambient {
        Ambient::Affine(_) => {
            let prob = AffineProblem::specialize(&polys, &vec![Coord::Free; nvars]);
            parts.extend(engine::count_chunks(&field, &prob, max_chunks, cfg.threads));
        }
        Ambient::Projective(_) => {
            // Representatives with first nonzero coordinate equal to 1.
            for lead in 0..nvars {
                let coords: Vec<Coord> = (0..nvars)
                    .map(|i| match i.cmp(&lead) {
                        std::cmp::Ordering::Less => Coord::Zero,
                        std::cmp::Ordering::Equal => Coord::One,
                        std::cmp::Ordering::Greater => Coord::Free,
                    })
                    .collect();
                let prob = AffineProblem::specialize(&polys, &coords);
                parts.extend(engine::count_chunks(&field, &prob, max_chunks, cfg.threads));
            }
        }
    }
    Ok(parts)
}

/// `#V(F_{q^n})` by exhaustive enumeration.
pub fn count_points(v: &VarietySpec, n: u32, cfg: &CountConfig) -> Result<u64> {
    Ok(count_points_partitioned(v, n, cfg, engine::DEFAULT_CHUNKS)?
        .into_iter()
        .sum())
}

/// How often `f` takes each value on `F_q^{nvars}`, `F_q` being the field of
/// `f`'s coefficients; entry `i` counts the element with index `i`.
pub fn value_distribution(f: &MultiPoly, cfg: &CountConfig) -> Result<Vec<u64>> {
    let q = f.ctx().size().unwrap_or(u64::MAX);
    let required = (q as u128).saturating_pow(f.nvars() as u32);
    if required > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: cfg.budget,
        });
    }
    let field = LogField::new(f.ctx(), cfg.budget)?;
    let terms = f
        .terms()
        .map(|(e, c)| Ok((e.to_vec(), field.from_element(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let prob = AffineProblem::specialize(&[terms], &vec![Coord::Free; f.nvars()]);
    Ok(engine::value_histogram(&field, &prob, engine::DEFAULT_CHUNKS, cfg.threads))
}

/// The counts `N_1, …, N_m` with `N_n = #V(F_{q^n})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub q: u64,
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn new(q: u64, counts: Vec<u64>) -> Self {
        Self { q, counts }
    }

    pub fn depth(&self) -> usize {
        self.counts.len()
    }

    /// `N_n` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.counts.get(i).copied())
    }
}

pub fn count_table(v: &VarietySpec, m: usize, cfg: &CountConfig) -> Result<CountTable> {
    let counts = (1..=m as u32)
        .map(|n| {
            count_points(v, n, cfg).map_err(|e| Error::AtDegree {
                n,
                inner: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable::new(v.q(), counts))
}

/// Largest depth `m ≤ limit` whose counts fit the budget.
pub fn max_depth(v: &VarietySpec, limit: usize, budget: u64) -> usize {
    (1..=limit)
        .take_while(|&n| required_candidates(v, n as u32) <= budget as u128)
        .last()
        .unwrap_or(0)
}

/// Number `a_d` of closed points of each degree `d = 1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedPointCensus {
    pub degrees: Vec<u64>,
}

impl ClosedPointCensus {
    pub fn depth(&self) -> usize {
        self.degrees.len()
    }

    /// `a_d` for `d ≥ 1`.
    pub fn get(&self, d: usize) -> Option<u64> {
        d.checked_sub(1).and_then(|i| self.degrees.get(i).copied())
    }
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Inverts `N_n = Σ_{d|n} d·a_d`: `a_d = (1/d) Σ_{e|d} μ(d/e) N_e`.
/// A fractional or negative `a_d` is reported as a consistency failure.
pub fn closed_point_census(t: &CountTable) -> Result<ClosedPointCensus> {
    let mut degrees = Vec::with_capacity(t.depth());
    for d in 1..=t.depth() as u64 {
        let s: i128 = (1..=d)
            .filter(|e| d % e == 0)
            .map(|e| mobius(d / e) as i128 * t.counts[(e - 1) as usize] as i128)
            .sum();
        if s % d as i128 != 0 {
            return Err(Error::Consistency(format!(
                "closed-point count a_{d} = {s}/{d} is not an integer"
            )));
        }
        if s < 0 {
            return Err(Error::Consistency(format!(
                "closed-point count a_{d} = {} is negative",
                s / d as i128
            )));
        }
        degrees.push((s / d as i128) as u64);
    }
    Ok(ClosedPointCensus { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(p: u64, d: usize) -> VarietySpec {
        let ctx = FieldCtx::prime(p).unwrap();
        VarietySpec::new(format!("P^{d}"), &ctx, Ambient::Projective(d), vec![]).unwrap()
    }

    #[test]
    fn projective_line_counts() {
        let v = pd(3, 1);
        let cfg = CountConfig::default();
        assert_eq!(count_points(&v, 1, &cfg).unwrap(), 4);
        assert_eq!(count_points(&v, 2, &cfg).unwrap(), 10);
    }

    #[test]
    fn empty_affine_variety() {
        let ctx = FieldCtx::prime(5).unwrap();
        let one = MultiPoly::constant(&ctx, 1, ctx.one()).unwrap();
        let v = VarietySpec::new("empty", &ctx, Ambient::Affine(1), vec![one]).unwrap();
        let t = count_table(&v, 4, &CountConfig::default()).unwrap();
        assert_eq!(t.counts, vec![0; 4]);
        let c = closed_point_census(&t).unwrap();
        assert_eq!(c.degrees, vec![0; 4]);
    }

    #[test]
    fn plane_table_and_census() {
        let t = count_table(&pd(2, 2), 3, &CountConfig::default()).unwrap();
        assert_eq!(t.counts, vec![7, 21, 73]);
        let c = closed_point_census(&t).unwrap();
        assert_eq!(c.degrees, vec![7, 7, 22]);

        let c = closed_point_census(&CountTable::new(2, vec![3, 5])).unwrap();
        assert_eq!(c.degrees, vec![3, 1]);
    }

    #[test]
    fn census_flags_impossible_tables() {
        assert!(matches!(
            closed_point_census(&CountTable::new(2, vec![3, 4])),
            Err(Error::Consistency(_))
        ));
        assert!(matches!(
            closed_point_census(&CountTable::new(2, vec![5, 3])),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        let v = pd(5, 3);
        let cfg = CountConfig::with_budget(100);
        assert!(matches!(count_points(&v, 1, &cfg), Err(Error::BudgetExceeded { required: 156, budget: 100 })));
        assert_eq!(max_depth(&pd(2, 1), 8, 100), 6);
    }

    #[test]
    fn rejects_inhomogeneous_projective_equations() {
        let ctx = FieldCtx::prime(3).unwrap();
        let f = MultiPoly::from_int_terms(&ctx, 2, &[(&[2, 0], 1), (&[0, 1], 1)]).unwrap();
        assert!(VarietySpec::new("bad", &ctx, Ambient::Projective(1), vec![f]).is_err());
        let g = MultiPoly::var(&ctx, 3, 0).unwrap();
        assert!(VarietySpec::new("bad", &ctx, Ambient::Projective(1), vec![g]).is_err());
    }

    fn cubic() -> VarietySpec {
        catalog::elliptic(7, [0, 0, 0, 3, 2]).unwrap().variety
    }

    #[test]
    fn sequential_matches_parallel() {
        let v = cubic();
        for n in 1..=3 {
            let seq = count_points_partitioned(&v, n, &CountConfig::default().sequential(), 256).unwrap();
            let two = count_points_partitioned(&v, n, &CountConfig { threads: Some(2), ..Default::default() }, 256).unwrap();
            let pool = count_points_partitioned(&v, n, &CountConfig::default(), 256).unwrap();
            assert_eq!(seq, two);
            assert_eq!(seq, pool);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(24))]
        #[test]
        fn partition_invariance(chunks in 1u64..400, n in 1u32..3) {
            let v = cubic();
            let whole = count_points(&v, n, &CountConfig::default().sequential()).unwrap();
            let parts = count_points_partitioned(&v, n, &CountConfig::default(), chunks).unwrap();
            proptest::prop_assert_eq!(parts.iter().sum::<u64>(), whole);
        }
    }

    #[test]
    fn projective_identity_closed_form() {
        for (p, d, n) in [(2u64, 1usize, 5u32), (3, 2, 3), (5, 3, 2), (2, 4, 3)] {
            let v = pd(p, d);
            let qn = p.pow(n);
            let expect = (qn.pow(d as u32 + 1) - 1) / (qn - 1);
            assert_eq!(count_points(&v, n, &CountConfig::default()).unwrap(), expect);
        }
    }
}

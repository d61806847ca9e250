//! Character sums and their Deligne bounds: exponential sums of
//! polynomials, multiple Kloosterman sums, and Ramanujan's τ.
//!
//! Complex sums are accumulated in double precision with Kahan
//! compensation; a sum passes when `bound − |S| ≥ −terms · 1e−12`. The τ
//! bound is decided in exact integers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex;
use serde::Serialize;

use crate::algebra::MultiPoly;
use crate::counting::{count_points, value_distribution, Ambient, CountConfig, VarietySpec};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElement, LogField, LOG_ZERO};
use crate::scalar::{KahanSum, Real};
use crate::weil::Verdict;

/// Per-summand rounding allowance.
pub const EPS_PER_TERM: f64 = 1e-12;

/// `ψ(x) = exp(2πi · Tr(x) / p)`.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    ctx: Arc<FieldCtx>,
    roots: Vec<Complex<f64>>,
}

impl AdditiveCharacter {
    pub fn new(ctx: &Arc<FieldCtx>) -> Self {
        let p = ctx.characteristic();
        let roots = (0..p)
            .map(|k| Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / p as f64))
            .collect();
        Self {
            ctx: Arc::clone(ctx),
            roots,
        }
    }

    pub fn eval(&self, x: &FieldElement) -> Complex<f64> {
        self.roots[x.trace_to_prime() as usize]
    }

    /// `ψ` in another floating-point type.
    pub fn eval_as<F: Real>(&self, x: &FieldElement) -> Complex<F> {
        let p = self.ctx.characteristic() as f64;
        let angle = std::f64::consts::TAU * x.trace_to_prime() as f64 / p;
        Complex::from_polar(F::one(), F::from_f64(angle))
    }

    /// `Σ_v hist[v] ψ(v)` over element indices `v`, compensated.
    fn weighted_sum(&self, hist: &[u64]) -> Complex<f64> {
        let mut acc = KahanSum::<f64>::default();
        for (i, &h) in hist.iter().enumerate() {
            if h > 0 {
                acc.add(self.eval(&self.ctx.from_index(i as u64)) * h as f64);
            }
        }
        acc.value()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterSumResult {
    pub kind: &'static str,
    pub label: String,
    pub q: u64,
    pub variables: usize,
    pub value: ComplexValue,
    pub magnitude: f64,
    pub bound: f64,
    pub margin: f64,
    pub terms: u64,
    pub epsilon: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CharacterSumResult {
    fn new(kind: &'static str, label: String, q: u64, variables: usize, value: Complex<f64>, bound: f64, terms: u64) -> Self {
        let magnitude = value.norm();
        let margin = bound - magnitude;
        let epsilon = terms as f64 * EPS_PER_TERM;
        Self {
            kind,
            label,
            q,
            variables,
            value: ComplexValue {
                re: value.re,
                im: value.im,
            },
            magnitude,
            bound,
            margin,
            terms,
            epsilon,
            verdict: Verdict::from_bool(margin >= -epsilon),
            notes: Vec::new(),
        }
    }
}

/// Looks for a singular point of the hypersurface `Q_d = 0` in `P^{n−1}`
/// over `F_{q^m}`, `m ≤ 2`, as a common zero of the partials. Returns the
/// first `m` at which one is found; `None` proves nothing.
fn leading_form_singular(f: &MultiPoly, cfg: &CountConfig, notes: &mut Vec<String>) -> Result<Option<u32>> {
    let lead = f.leading_form();
    let n = f.nvars();
    let partials: Vec<MultiPoly> = (0..n)
        .map(|i| lead.partial_derivative(i))
        .filter(|p| !p.is_zero())
        .collect();
    let spec = VarietySpec::new("singular locus of the leading form", f.ctx(), Ambient::Projective(n - 1), partials)?;
    for m in 1..=2 {
        match count_points(&spec, m, cfg) {
            Ok(0) => {}
            Ok(_) => return Ok(Some(m)),
            Err(Error::BudgetExceeded { .. }) => {
                notes.push(format!("leading-form smoothness not checked over F_(q^{m}): budget"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Σ_{x ∈ F_q^n} ψ(Q(x))` against `(d − 1)^n q^{n/2}`.
///
/// Not applicable when `gcd(d, p) ≠ 1` or when a singular point of the
/// leading form turns up over `F_q` or `F_{q^2}`. Passing that search does
/// not prove smoothness.
pub fn exponential_sum(f: &MultiPoly, label: &str, cfg: &CountConfig) -> Result<CharacterSumResult> {
    let ctx = f.ctx();
    let q = ctx.size().unwrap_or(u64::MAX);
    let n = f.nvars();
    let d = f.total_degree().unwrap_or(0);
    let hist = value_distribution(f, cfg)?;
    let value = AdditiveCharacter::new(ctx).weighted_sum(&hist);
    let terms: u64 = hist.iter().sum();
    let bound = (d.saturating_sub(1) as f64).powi(n as i32) * (q as f64).powf(n as f64 / 2.0);
    let mut r = CharacterSumResult::new("exponential-sum", label.to_string(), q, n, value, bound, terms);
    if gcd(d as u64, ctx.characteristic()) != 1 {
        r.verdict = Verdict::NotApplicable;
        r.notes.push(format!("degree {d} is not prime to the characteristic"));
        return Ok(r);
    }
    if n > 0 {
        if let Some(m) = leading_form_singular(f, cfg, &mut r.notes)? {
            r.verdict = Verdict::NotApplicable;
            r.notes.push(format!("leading form is singular over F_(q^{m})"));
        } else {
            r.notes.push("leading-form smoothness: no singular point found (not a proof)".into());
        }
    }
    Ok(r)
}

/// `Σ_{x_i ∈ F_q^×} ψ(x_1 + … + x_n + a/(x_1⋯x_n))` against `(n + 1) q^{n/2}`;
/// `a` defaults to 1.
pub fn kloosterman(ctx: &Arc<FieldCtx>, n: usize, shift: Option<&FieldElement>, cfg: &CountConfig) -> Result<CharacterSumResult> {
    if n == 0 {
        return Err(Error::Invalid("Kloosterman sums need at least one variable".into()));
    }
    let q = ctx.size().unwrap_or(u64::MAX);
    let required = ((q - 1) as u128).saturating_pow(n as u32);
    if required > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: cfg.budget,
        });
    }
    let field = LogField::new(ctx, cfg.budget)?;
    let shift_log = match shift {
        None => 0,
        Some(a) => {
            let l = field.from_element(a)?;
            if l == LOG_ZERO {
                return Err(Error::Invalid("Kloosterman shift must be nonzero".into()));
            }
            l
        }
    };
    let order = field.order() as u64;
    let mut hist = vec![0u64; q as usize];
    let mut logs = vec![0u32; n];
    'outer: loop {
        let total: u64 = logs.iter().map(|&l| l as u64).sum::<u64>() % order;
        let inv_term = ((shift_log as u64 + order - total) % order) as u32;
        let v = logs.iter().fold(inv_term, |acc, &l| field.add(acc, l));
        hist[field.index_of(v) as usize] += 1;
        for l in logs.iter_mut() {
            *l += 1;
            if (*l as u64) < order {
                continue 'outer;
            }
            *l = 0;
        }
        break;
    }
    let value = AdditiveCharacter::new(ctx).weighted_sum(&hist);
    let bound = (n as f64 + 1.0) * (q as f64).powf(n as f64 / 2.0);
    let label = match shift {
        None => format!("K_{n}(F_{q})"),
        Some(a) => format!("K_{n}({a}; F_{q})"),
    };
    Ok(CharacterSumResult::new("kloosterman", label, q, n, value, bound, required as u64))
}

/// Coefficients of `∏_{n ≥ 1} (1 − q^n)` below `q^len`, by the pentagonal
/// number theorem.
fn euler_function(len: usize) -> Vec<i128> {
    let mut out = vec![0i128; len];
    for k in 0i64.. {
        let mut hit = false;
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if (g as usize) < len {
                out[g as usize] = if k % 2 == 0 { 1 } else { -1 };
                hit = true;
            }
        }
        if !hit {
            break;
        }
    }
    out
}

fn mul_truncated(a: &[i128], b: &[i128], len: usize) -> Result<Vec<i128>> {
    let overflow = || Error::Overflow("tau expansion exceeds 128-bit coefficients".into());
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            let t = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauBound {
    pub p: u64,
    pub tau: String,
    /// `τ(p)^2 ≤ 4 p^11`, exact.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub limit: usize,
    pub values: Vec<String>,
    pub primes: Vec<TauBound>,
    pub verdict: Verdict,
}

impl TauReport {
    /// `τ(n)` for `1 ≤ n ≤ limit`.
    pub fn tau(&self, n: usize) -> BigInt {
        self.values[n - 1].parse().expect("stored as decimal")
    }
}

/// `τ(1..=limit)` from `Δ = q ∏ (1 − q^n)^{24}`, with the bound
/// `|τ(p)| ≤ 2 p^{11/2}` checked as `τ(p)^2 ≤ 4 p^{11}` for primes `p ≤ limit`.
pub fn ramanujan_tau(limit: usize) -> Result<TauReport> {
    if limit == 0 {
        return Err(Error::Invalid("tau limit must be at least 1".into()));
    }
    let len = limit;
    let e1 = euler_function(len);
    let e2 = mul_truncated(&e1, &e1, len)?;
    let e4 = mul_truncated(&e2, &e2, len)?;
    let e8 = mul_truncated(&e4, &e4, len)?;
    let e16 = mul_truncated(&e8, &e8, len)?;
    let e24 = mul_truncated(&e16, &e8, len)?;
    let values: Vec<String> = e24.iter().map(|c| c.to_string()).collect();
    let primes: Vec<TauBound> = (2..=limit as u64)
        .filter(|&p| crate::ffield::is_prime(p))
        .map(|p| {
            let tau = BigInt::from(e24[p as usize - 1]);
            let ok = &tau * &tau <= BigInt::from(4) * BigInt::from(p).pow(11);
            TauBound {
                p,
                tau: tau.to_string(),
                ok,
            }
        })
        .collect();
    let verdict = Verdict::from_bool(e24[0] == 1 && primes.iter().all(|b| b.ok));
    Ok(TauReport {
        limit,
        values,
        primes,
        verdict,
    })
}

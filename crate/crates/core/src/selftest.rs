//! The fixture catalog run end to end: counts against closed forms,
//! closed-point integrality, the two zeta definitions, reconstruction and
//! Weil checks, plus the character-sum bounds.

use serde::Serialize;

use crate::charsum::{exponential_sum, kloosterman, ramanujan_tau};
use crate::counting::catalog::{catalog, diagonal, Fixture};
use crate::counting::{closed_point_census, count_table, max_depth, CountConfig};
use crate::error::Result;
use crate::ffield::FieldCtx;
use crate::report::{analyze, AnalysisOptions, Stage};
use crate::weil::Verdict;
use crate::zeta::{euler_product_series, zeta_series};
use crate::Series;

/// Counts go no deeper than this, budget permitting.
pub const SELFTEST_DEPTH: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct SelftestCheck {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub budget: u64,
    pub tol: f64,
    pub checks: Vec<SelftestCheck>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: Verdict,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> SelftestCheck {
    SelftestCheck {
        name: name.into(),
        verdict: Verdict::from_bool(ok),
        detail: detail.into(),
    }
}

fn fixture_checks(f: &Fixture, cfg: &CountConfig, tol: f64) -> Result<Vec<SelftestCheck>> {
    let v = &f.variety;
    let depth = max_depth(v, SELFTEST_DEPTH, cfg.budget);
    if depth == 0 {
        return Ok(vec![SelftestCheck {
            name: format!("{}: counts", f.id),
            verdict: Verdict::NotApplicable,
            detail: "N_1 exceeds the budget".into(),
        }]);
    }
    let mut out = Vec::new();
    let t = count_table(v, depth, cfg)?;
    if let Some(o) = f.oracle {
        let expected: Vec<u128> = (1..=depth as u32).map(|n| o.count(v.q(), n)).collect();
        let got: Vec<u128> = t.counts.iter().map(|&c| c as u128).collect();
        out.push(check(
            format!("{}: counts match closed form", f.id),
            got == expected,
            format!("{:?}", t.counts),
        ));
    }
    match closed_point_census(&t) {
        Ok(c) => {
            out.push(check(format!("{}: closed points integral", f.id), true, format!("{:?}", c.degrees)));
            let z: Series = zeta_series(&t, depth)?;
            let e: Series = euler_product_series(&c, depth)?;
            out.push(check(
                format!("{}: exponential and Euler product agree", f.id),
                z == e,
                format!("order {depth}"),
            ));
        }
        Err(e) => out.push(check(format!("{}: closed points integral", f.id), false, e.to_string())),
    }

    let Some((num, den)) = f.zeta_degrees else {
        return Ok(out);
    };
    let name = format!("{}: zeta and Weil checks", f.id);
    if depth < num + den {
        out.push(SelftestCheck {
            name,
            verdict: Verdict::NotApplicable,
            detail: format!("needs depth {} for degrees ({num}, {den}); budget allows {depth}", num + den),
        });
        return Ok(out);
    }
    let opts = AnalysisOptions {
        stage: Stage::Weil,
        depth: num + den,
        degrees: Some((num, den)),
        tol,
        count: *cfg,
        ..Default::default()
    };
    let r = analyze(v, &opts)?;
    let found = r
        .zeta
        .as_ref()
        .and_then(|z| z.rational.as_ref())
        .map(|z| (z.numerator.degree_or_zero(), z.denominator.degree_or_zero()));
    let ok = r.verdict.is_ok() && found == Some((num, den));
    let detail = match r.zeta.as_ref().and_then(|z| z.rational.as_ref()) {
        Some(z) => format!("Z = {z}"),
        None => "no reconstruction".into(),
    };
    out.push(check(name, ok, detail));
    Ok(out)
}

fn charsum_checks(cfg: &CountConfig) -> Result<Vec<SelftestCheck>> {
    let mut out = Vec::new();
    let primes = (2u64..=101).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
    let mut worst = f64::INFINITY;
    let mut all = true;
    for p in primes {
        let ctx = FieldCtx::prime(p)?;
        for a in 1..p {
            let r = kloosterman(&ctx, 1, Some(&ctx.constant(a)), cfg)?;
            all &= r.verdict.is_ok();
            worst = worst.min(r.margin);
        }
    }
    out.push(check(
        "kloosterman n=1, all shifts, p <= 101",
        all,
        format!("smallest margin {worst:.6}"),
    ));
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ctx = FieldCtx::of_order(q)?;
        let r = kloosterman(&ctx, 2, None, cfg)?;
        out.push(check(
            format!("kloosterman n=2 over F_{q}"),
            r.verdict.is_ok(),
            format!("|K| = {:.6}, bound {:.6}", r.magnitude, r.bound),
        ));
    }
    for (p, e, r) in [(5u64, 3u32, 1usize), (7, 3, 2), (3, 2, 2), (5, 2, 3), (11, 3, 2)] {
        let ctx = FieldCtx::prime(p)?;
        let label = format!("diagonal e={e} in {} variables over F_{p}", r + 1);
        let s = exponential_sum(&diagonal(&ctx, e, r)?, &label, cfg)?;
        out.push(check(
            format!("exponential sum: {label}"),
            s.verdict.is_ok(),
            format!("|S| = {:.6}, bound {:.6}", s.magnitude, s.bound),
        ));
    }
    let tau = ramanujan_tau(100)?;
    out.push(check(
        "tau(p)^2 <= 4 p^11 for p <= 100",
        tau.verdict.is_ok() && tau.tau(1) == 1.into(),
        format!("{} primes", tau.primes.len()),
    ));
    Ok(out)
}

/// Runs every catalog fixture at the deepest level the budget allows, then
/// the character-sum checks.
pub fn selftest(cfg: &CountConfig, tol: f64) -> Result<SelftestReport> {
    let mut checks = Vec::new();
    for f in catalog() {
        checks.extend(fixture_checks(&f, cfg, tol)?);
    }
    checks.extend(charsum_checks(cfg)?);
    let failed = checks.iter().filter(|c| !c.verdict.is_ok()).count();
    let passed = checks.iter().filter(|c| c.verdict == Verdict::Pass).count();
    Ok(SelftestReport {
        budget: cfg.budget,
        tol,
        checks,
        passed,
        failed,
        verdict: Verdict::from_bool(failed == 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_budget_selftest_passes() {
        let r = selftest(&CountConfig::with_budget(1 << 16), 1e-9).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.verdict.is_ok()).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(r.passed > 50);
        assert!(r.checks.iter().any(|c| c.verdict == Verdict::NotApplicable));
    }
}

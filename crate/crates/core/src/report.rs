//! End-to-end analysis of a variety: counts, closed points, zeta function
//! and Weil checks, assembled into one serializable report.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::counting::{closed_point_census, count_table, Ambient, CountConfig, CountTable, VarietySpec};
use crate::error::{Error, ErrorKind, Result};
use crate::weil::{
    complete_intersection_bound, curve_analysis, curve_count_formula, extend_counts, functional_equation_check,
    hasse_weil_bound, rh_roots, weight_separation, BoundCheck, CurveAnalysis, FrobeniusCheck, FunctionalEquation,
    RhCheck, RootRecord, Verdict, WeightSeparation,
};
use crate::zeta::{discover_degrees, euler_product_series, reconstruct_rational, zeta_series, RationalFn};
use crate::{Rational, Series};

/// How far the pipeline runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Count,
    Zeta,
    Weil,
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub stage: Stage,
    pub depth: usize,
    /// `(deg P, deg Q)`; discovered by a Hankel sweep when absent.
    pub degrees: Option<(usize, usize)>,
    pub tol: f64,
    pub count: CountConfig,
    /// Hasse–Weil checks run to at least this `n`, predicting counts
    /// beyond the table from the reconstructed zeta function.
    pub hasse_weil_depth: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            stage: Stage::Weil,
            depth: 3,
            degrees: None,
            tol: crate::weil::DEFAULT_TOL,
            count: CountConfig::default(),
            hasse_weil_depth: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VarietySummary {
    pub label: String,
    pub p: u64,
    pub a: usize,
    pub q: u64,
    pub ambient: Ambient,
    pub dimension: usize,
    pub degrees: Vec<u32>,
}

impl VarietySummary {
    pub fn of(v: &VarietySpec) -> Self {
        Self {
            label: v.label().to_string(),
            p: v.base().characteristic(),
            a: v.base().degree(),
            q: v.q(),
            ambient: v.ambient(),
            dimension: v.dimension(),
            degrees: v.degrees(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub depth: usize,
    pub num_degree: Option<usize>,
    pub den_degree: Option<usize>,
    pub tol: f64,
    pub budget: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub degrees: Vec<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalitySection {
    pub verdict: Verdict,
    pub method: &'static str,
    pub num_degree: Option<usize>,
    pub den_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSection {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaSection {
    pub series: Series,
    /// Euler product over closed points equals the exponential series.
    pub definitions_agree: CheckSection,
    pub rationality: RationalitySection,
    pub integrality: CheckSection,
    pub rational: Option<RationalFn>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhSection {
    pub verdict: Verdict,
    pub tolerance: f64,
    pub roots: Vec<RootRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiSection {
    /// Numerically inferred, not computed from cohomology.
    pub inferred: Vec<u64>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSection {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<CurveAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rh: Option<RhCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_formula: Option<FrobeniusCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assumptions {
    pub smooth_asserted: bool,
    pub smoothness_verified: bool,
    pub projective: bool,
    /// Conjecture checks only claim anything for smooth projective inputs.
    pub hypotheses_hold: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub functional_equation: FunctionalEquation,
    pub rh: RhSection,
    pub betti: BettiSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSection>,
    pub bounds: Vec<BoundCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub variety: VarietySummary,
    pub settings: Settings,
    pub counts: CountTable,
    pub census: Census,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weil: Option<WeilReport>,
    pub assumptions: Assumptions,
    pub verdict: Verdict,
}

fn check_failure(e: &Error) -> bool {
    matches!(e.kind(), ErrorKind::Check)
}

/// Fail verdicts on inputs not known to be smooth and projective say
/// nothing about the conjectures; they are reported as not applicable.
fn soften(v: Verdict, hypotheses_hold: bool) -> Verdict {
    if v == Verdict::Fail && !hypotheses_hold {
        Verdict::NotApplicable
    } else {
        v
    }
}

fn build_zeta(t: &CountTable, census_ok: Option<&crate::counting::ClosedPointCensus>, opts: &AnalysisOptions) -> Result<ZetaSection> {
    let m = opts.depth;
    let series: Series = zeta_series(t, m)?;
    let definitions_agree = match census_ok {
        Some(c) => {
            let e: Series = euler_product_series(c, m)?;
            CheckSection {
                verdict: Verdict::from_bool(e == series),
                detail: (e != series).then(|| "Euler product differs from exp(sum N_n t^n / n)".to_string()),
            }
        }
        None => CheckSection {
            verdict: Verdict::Fail,
            detail: Some("closed-point census failed".into()),
        },
    };
    let (method, degrees) = match opts.degrees {
        Some(d) => {
            if m < d.0 + d.1 {
                return Err(Error::InsufficientOrder {
                    needed: d.0 + d.1,
                    have: m,
                });
            }
            ("supplied", Some(d))
        }
        None => ("hankel-sweep", discover_degrees(&series)),
    };
    let Some((num, den)) = degrees else {
        return Ok(ZetaSection {
            series,
            definitions_agree,
            rationality: RationalitySection {
                verdict: Verdict::Inconclusive,
                method,
                num_degree: None,
                den_degree: None,
                detail: Some(format!("no rational fit in any window testable at depth {m}; increase --depth")),
            },
            integrality: CheckSection {
                verdict: Verdict::NotApplicable,
                detail: None,
            },
            rational: None,
        });
    };
    let (rationality, integrality, rational) = match reconstruct_rational(&series, num, den) {
        Ok(z) => (
            RationalitySection {
                verdict: Verdict::Pass,
                method,
                num_degree: Some(z.numerator.degree_or_zero()),
                den_degree: Some(z.denominator.degree_or_zero()),
                detail: None,
            },
            CheckSection {
                verdict: Verdict::Pass,
                detail: None,
            },
            Some(z),
        ),
        Err(e @ Error::IntegralityViolation { .. }) => (
            RationalitySection {
                verdict: Verdict::Pass,
                method,
                num_degree: Some(num),
                den_degree: Some(den),
                detail: None,
            },
            CheckSection {
                verdict: Verdict::Fail,
                detail: Some(e.to_string()),
            },
            None,
        ),
        Err(e @ Error::NoRationalFit { .. }) => (
            RationalitySection {
                verdict: Verdict::Fail,
                method,
                num_degree: Some(num),
                den_degree: Some(den),
                detail: Some(e.to_string()),
            },
            CheckSection {
                verdict: Verdict::NotApplicable,
                detail: None,
            },
            None,
        ),
        Err(e) => return Err(e),
    };
    Ok(ZetaSection {
        series,
        definitions_agree,
        rationality,
        integrality,
        rational,
    })
}

fn build_weil(v: &VarietySpec, t: &CountTable, z: &RationalFn, hyp: bool, opts: &AnalysisOptions) -> Result<WeilReport> {
    let q = v.q();
    let mut fe = functional_equation_check(z, q, v.dimension());
    fe.verdict = soften(fe.verdict, hyp);

    let ws: WeightSeparation = weight_separation(z, q, opts.tol)?;
    let rh = RhSection {
        verdict: soften(ws.verdict, hyp),
        tolerance: ws.tolerance,
        roots: ws.roots.clone(),
        notes: ws.notes.clone(),
    };
    let betti = BettiSection {
        inferred: ws.betti.clone(),
        euler_characteristic: ws.euler_characteristic(),
    };

    let mut bounds = Vec::new();
    let curve = if v.dimension() == 1 && v.is_projective() {
        Some(match curve_analysis(z, q) {
            Ok(c) => {
                let rh = rh_roots(&c.p1, q, 1, opts.tol)?;
                let formula = curve_count_formula(t, &c.p1, q);
                let counts = extend_counts(t, z, opts.hasse_weil_depth.max(t.depth()))?;
                let mut hw = hasse_weil_bound(&counts, c.genus, q);
                hw.verdict = soften(hw.verdict, hyp);
                bounds.push(hw);
                let verdict = soften(Verdict::from_bool(rh.verdict.is_ok() && formula.verdict.is_ok()), hyp);
                CurveSection {
                    verdict,
                    analysis: Some(c),
                    rh: Some(rh),
                    count_formula: Some(formula),
                    detail: None,
                }
            }
            Err(e) if check_failure(&e) => CurveSection {
                verdict: soften(Verdict::Fail, hyp),
                analysis: None,
                rh: None,
                count_formula: None,
                detail: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        })
    } else {
        None
    };
    if v.is_projective() && v.equations().len() == 1 {
        if let Some(n1) = t.get(1) {
            let mut ci = complete_intersection_bound(n1, q, v.dimension(), &v.degrees());
            ci.verdict = soften(ci.verdict, hyp);
            bounds.push(ci);
        }
    }
    Ok(WeilReport {
        functional_equation: fe,
        rh,
        betti,
        curve,
        bounds,
    })
}

/// Runs the pipeline up to `opts.stage`. Resource and usage problems are
/// errors; failed mathematical checks are verdicts inside the report.
pub fn analyze(v: &VarietySpec, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    if opts.depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let t = count_table(v, opts.depth, &opts.count)?;
    let census_result = closed_point_census(&t);
    let census = match &census_result {
        Ok(c) => Census {
            degrees: c.degrees.clone(),
            verdict: Verdict::Pass,
            detail: None,
        },
        Err(e) => Census {
            degrees: Vec::new(),
            verdict: Verdict::Fail,
            detail: Some(e.to_string()),
        },
    };

    let projective = v.is_projective();
    let hyp = projective && v.smooth_asserted();
    let mut notes = vec!["smoothness is not verified algorithmically".to_string()];
    if !hyp {
        notes.push("hypotheses not verified: conjecture checks are informational".into());
    }
    let assumptions = Assumptions {
        smooth_asserted: v.smooth_asserted(),
        smoothness_verified: false,
        projective,
        hypotheses_hold: hyp,
        notes,
    };

    let zeta = if opts.stage >= Stage::Zeta {
        Some(build_zeta(&t, census_result.as_ref().ok(), opts)?)
    } else {
        None
    };
    let weil = match (&zeta, opts.stage) {
        (Some(ZetaSection { rational: Some(z), .. }), Stage::Weil) => Some(build_weil(v, &t, z, hyp, opts)?),
        _ => None,
    };

    let mut verdicts = vec![census.verdict];
    if let Some(z) = &zeta {
        verdicts.extend([z.definitions_agree.verdict, z.rationality.verdict, z.integrality.verdict]);
    }
    if let Some(w) = &weil {
        verdicts.extend([w.functional_equation.verdict, w.rh.verdict]);
        verdicts.extend(w.curve.iter().map(|c| c.verdict));
        verdicts.extend(w.bounds.iter().map(|b| b.verdict));
    }
    let verdict = Verdict::from_bool(verdicts.iter().all(|v| v.is_ok()));
    Ok(AnalysisReport {
        variety: VarietySummary::of(v),
        settings: Settings {
            depth: opts.depth,
            num_degree: opts.degrees.map(|d| d.0),
            den_degree: opts.degrees.map(|d| d.1),
            tol: opts.tol,
            budget: opts.count.budget,
        },
        counts: t,
        census,
        zeta,
        weil,
        assumptions,
        verdict,
    })
}

/// Predicted `N_n` as an `f64`, for display.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

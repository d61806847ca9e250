use weilv::counting::catalog;
use weilv::counting::{count_table, parse_variety, CountConfig, VarietyFile};
use weilv::report::{analyze, AnalysisOptions, Stage};
use weilv::weil::Verdict;
use weilv::zeta::{discover_degrees, zeta_series};
use weilv::{FloatSeries, Series};

const TWISTED_CUBIC: &str = r#"{
    "label": "y^2 z = x^3 + 2 z^3",
    "p": 7,
    "ambient": {"kind": "projective", "dim": 2},
    "equations": [[[[0,2,1],1], [[3,0,0],-1], [[0,0,3],-2]]],
    "smooth": true
}"#;

#[test]
fn file_to_report() {
    let v = parse_variety(TWISTED_CUBIC).unwrap();
    let opts = AnalysisOptions {
        depth: 4,
        degrees: Some((2, 2)),
        ..Default::default()
    };
    let r = analyze(&v, &opts).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let z = r.zeta.unwrap().rational.unwrap();
    // N_1 by hand: for each x, y^2 = x^3 + 2 has 1 + χ(x^3 + 2) solutions,
    // plus the point at infinity.
    let mut n1 = 1;
    for x in 0..7u64 {
        let rhs = (x * x * x + 2) % 7;
        n1 += (0..7u64).filter(|y| y * y % 7 == rhs).count() as i64;
    }
    assert_eq!(z.numerator.coeff(1), (n1 - 8).into());
    assert_eq!(r.weil.unwrap().betti.inferred, vec![1, 2, 1]);
}

#[test]
fn file_round_trip_preserves_counts() {
    let v = parse_variety(TWISTED_CUBIC).unwrap();
    let text = serde_json::to_string(&VarietyFile::from_spec(&v)).unwrap();
    let w = parse_variety(&text).unwrap();
    let cfg = CountConfig::default();
    assert_eq!(count_table(&v, 3, &cfg).unwrap(), count_table(&w, 3, &cfg).unwrap());
}

#[test]
fn hankel_sweep_finds_catalog_degrees() {
    for id in ["p1-f3", "p1-f4", "p2-f2", "p2-f3", "diag-2-2-f3"] {
        let f = catalog::fixture(id).unwrap();
        let (n, d) = f.zeta_degrees.unwrap();
        let m = n + 2 * d + 1;
        let t = count_table(&f.variety, m, &CountConfig::with_budget(1 << 26)).unwrap();
        let s: Series = zeta_series(&t, m).unwrap();
        assert_eq!(discover_degrees(&s), Some((n, d)), "{id}");
    }
}

#[test]
fn float_series_track_the_exact_ones() {
    let f = catalog::fixture("ell-7-0-0-0-3-2").unwrap();
    let t = count_table(&f.variety, 4, &CountConfig::default()).unwrap();
    let exact: Series = zeta_series(&t, 4).unwrap();
    let approx: FloatSeries = zeta_series(&t, 4).unwrap();
    for (a, b) in exact.coeffs().iter().zip(approx.coeffs()) {
        let a = num_traits::ToPrimitive::to_f64(a).unwrap();
        assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }
}

#[test]
fn count_stage_on_every_fixture_passes() {
    let opts = AnalysisOptions {
        stage: Stage::Count,
        depth: 1,
        ..Default::default()
    };
    for f in catalog::catalog() {
        let r = analyze(&f.variety, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", f.id);
        if let Some(o) = f.oracle {
            assert_eq!(r.counts.counts[0] as u128, o.count(f.variety.q(), 1), "{}", f.id);
        }
    }
}

//! Fixture varieties with known answers.
//!
//! Each fixture carries the variety, the family it belongs to, a closed-form
//! count oracle where one is known, and the zeta degrees `(deg P, deg Q)` a
//! reconstruction should find.

use std::sync::Arc;

use crate::algebra::MultiPoly;
use crate::error::Result;
use crate::ffield::FieldCtx;

use super::{Ambient, VarietySpec};

/// Closed-form `#V(F_{q^n})` as a polynomial in `Q = q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// `1 + Q + … + Q^d`.
    ProjectiveSpace { d: u32 },
    /// Split quadric surface `P^1 × P^1`: `(Q + 1)^2`.
    SplitQuadricSurface,
    /// Smooth conic with a rational point: `Q + 1`.
    Conic,
    /// Grassmannian of planes in 4-space: `(Q^2 + 1)(Q^2 + Q + 1)`.
    Grassmannian24,
}

impl Oracle {
    pub fn count(&self, q: u64, n: u32) -> u128 {
        let big_q = (q as u128).pow(n);
        match *self {
            Oracle::ProjectiveSpace { d } => (0..=d).map(|i| big_q.pow(i)).sum(),
            Oracle::SplitQuadricSurface => (big_q + 1).pow(2),
            Oracle::Conic => big_q + 1,
            Oracle::Grassmannian24 => (big_q * big_q + 1) * (big_q * big_q + big_q + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    ProjectiveSpace { d: usize },
    /// Weierstrass cubic with invariants `[a1, a2, a3, a4, a6]`.
    Elliptic { a: [i64; 5] },
    /// `x_0^e + … + x_r^e = 0` in `P^r`.
    Diagonal { e: u32, r: usize },
    /// Plücker quadric `x0 x5 − x1 x4 + x2 x3` in `P^5`.
    Grassmannian,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub variety: VarietySpec,
    pub family: Family,
    pub oracle: Option<Oracle>,
    /// Where the expected answer comes from.
    pub provenance: &'static str,
    /// `(deg P, deg Q)` of `Z = P/Q` when known.
    pub zeta_degrees: Option<(usize, usize)>,
}

impl Fixture {
    pub fn is_curve(&self) -> bool {
        self.variety.dimension() == 1 && self.variety.is_projective()
    }
}

/// Discriminant of the Weierstrass cubic with invariants `a`, as an integer.
pub fn weierstrass_discriminant(a: [i64; 5]) -> i128 {
    let [a1, a2, a3, a4, a6] = a.map(i128::from);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

/// `y^2 z + a1 xyz + a3 yz^2 − x^3 − a2 x^2 z − a4 xz^2 − a6 z^3` in `(x, y, z)`.
pub fn weierstrass(ctx: &Arc<FieldCtx>, a: [i64; 5]) -> Result<MultiPoly> {
    let [a1, a2, a3, a4, a6] = a;
    MultiPoly::from_int_terms(
        ctx,
        3,
        &[
            (&[0, 2, 1], 1),
            (&[1, 1, 1], a1),
            (&[0, 1, 2], a3),
            (&[3, 0, 0], -1),
            (&[2, 0, 1], -a2),
            (&[1, 0, 2], -a4),
            (&[0, 0, 3], -a6),
        ],
    )
}

pub fn diagonal(ctx: &Arc<FieldCtx>, e: u32, r: usize) -> Result<MultiPoly> {
    let terms: Vec<(Vec<u32>, i64)> = (0..=r)
        .map(|i| {
            let mut v = vec![0; r + 1];
            v[i] = e;
            (v, 1)
        })
        .collect();
    let refs: Vec<(&[u32], i64)> = terms.iter().map(|(v, c)| (v.as_slice(), *c)).collect();
    MultiPoly::from_int_terms(ctx, r + 1, &refs)
}

pub fn plucker(ctx: &Arc<FieldCtx>) -> Result<MultiPoly> {
    MultiPoly::from_int_terms(
        ctx,
        6,
        &[
            (&[1, 0, 0, 0, 0, 1], 1),
            (&[0, 1, 0, 0, 1, 0], -1),
            (&[0, 0, 1, 1, 0, 0], 1),
        ],
    )
}

/// Smooth elliptic curves over small primes, as `(p, [a1, a2, a3, a4, a6])`.
pub const ELLIPTIC: [(u64, [i64; 5]); 9] = [
    (5, [0, 0, 0, 1, 1]),
    (5, [0, 0, 0, 2, 1]),
    (5, [1, 0, 1, 0, 2]),
    (7, [0, 0, 0, 3, 2]),
    (7, [0, 1, 0, 0, 3]),
    (7, [0, 0, 1, -1, 0]),
    (11, [0, 0, 0, 1, 3]),
    (13, [0, 0, 0, 2, 5]),
    (13, [1, 1, 1, 0, 1]),
];

fn base_field(q: u64) -> Result<Arc<FieldCtx>> {
    match q {
        4 => FieldCtx::new(2, 2),
        _ => FieldCtx::prime(q),
    }
}

pub fn projective_space(q: u64, d: usize) -> Result<Fixture> {
    let ctx = base_field(q)?;
    let variety = VarietySpec::new(format!("P^{d} over F_{q}"), &ctx, Ambient::Projective(d), vec![])?
        .with_smooth(true);
    Ok(Fixture {
        id: format!("p{d}-f{q}"),
        variety,
        family: Family::ProjectiveSpace { d },
        oracle: Some(Oracle::ProjectiveSpace { d: d as u32 }),
        provenance: "closed form: sum of q^(in) for i = 0..d",
        zeta_degrees: Some((0, d + 1)),
    })
}

pub fn elliptic(p: u64, a: [i64; 5]) -> Result<Fixture> {
    let ctx = FieldCtx::prime(p)?;
    let smooth = weierstrass_discriminant(a).rem_euclid(p as i128) != 0;
    let [a1, a2, a3, a4, a6] = a;
    let variety = VarietySpec::new(
        format!("E[{a1},{a2},{a3},{a4},{a6}] over F_{p}"),
        &ctx,
        Ambient::Projective(2),
        vec![weierstrass(&ctx, a)?],
    )?
    .with_smooth(smooth);
    Ok(Fixture {
        id: format!("ell-{p}-{a1}-{a2}-{a3}-{a4}-{a6}").replace("--", "-m"),
        variety,
        family: Family::Elliptic { a },
        oracle: None,
        provenance: "brute-force enumeration; smoothness from the discriminant",
        zeta_degrees: Some((2, 2)),
    })
}

fn diagonal_fixture(
    p: u64,
    e: u32,
    r: usize,
    oracle: Option<Oracle>,
    zeta_degrees: Option<(usize, usize)>,
) -> Result<Fixture> {
    let ctx = FieldCtx::prime(p)?;
    let terms: Vec<String> = (0..=r).map(|i| format!("x{i}^{e}")).collect();
    let variety = VarietySpec::new(
        format!("{} = 0 over F_{p}", terms.join(" + ")),
        &ctx,
        Ambient::Projective(r),
        vec![diagonal(&ctx, e, r)?],
    )?
    // Fermat hypersurfaces are smooth when the exponent is prime to p.
    .with_smooth(!(e as u64).is_multiple_of(p));
    Ok(Fixture {
        id: format!("diag-{e}-{r}-f{p}"),
        variety,
        family: Family::Diagonal { e, r },
        oracle,
        provenance: match oracle {
            Some(_) => "closed form for the split quadric",
            None => "brute-force enumeration",
        },
        zeta_degrees,
    })
}

pub fn grassmannian(p: u64) -> Result<Fixture> {
    let ctx = FieldCtx::prime(p)?;
    let variety = VarietySpec::new(
        format!("Gr(2,4) in P^5 over F_{p}"),
        &ctx,
        Ambient::Projective(5),
        vec![plucker(&ctx)?],
    )?
    .with_smooth(true);
    Ok(Fixture {
        id: format!("gr24-f{p}"),
        variety,
        family: Family::Grassmannian,
        oracle: Some(Oracle::Grassmannian24),
        provenance: "Gaussian binomial [4 choose 2]_Q",
        zeta_degrees: Some((0, 6)),
    })
}

/// The full fixture list, in a fixed order.
pub fn catalog() -> Vec<Fixture> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for q in [2, 3, 4, 5] {
            out.push(projective_space(q, d).expect("projective fixture"));
        }
    }
    for (p, a) in ELLIPTIC {
        out.push(elliptic(p, a).expect("elliptic fixture"));
    }
    let diag = [
        (3, 2, 2, Some(Oracle::Conic), Some((0, 2))),
        (7, 3, 2, None, Some((2, 2))),
        (3, 4, 2, None, Some((6, 2))),
        (3, 2, 3, Some(Oracle::SplitQuadricSurface), Some((0, 4))),
        (7, 3, 3, None, Some((0, 9))),
    ];
    for (p, e, r, oracle, deg) in diag {
        out.push(diagonal_fixture(p, e, r, oracle, deg).expect("diagonal fixture"));
    }
    for p in [2, 3] {
        out.push(grassmannian(p).expect("grassmannian fixture"));
    }
    out
}

/// Looks a fixture up by id.
pub fn fixture(id: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::naive::count_points_naive;
    use crate::counting::{closed_point_census, count_table, max_depth, CountConfig};

    #[test]
    fn ids_are_unique() {
        let cat = catalog();
        let mut ids: Vec<&str> = cat.iter().map(|f| f.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        assert!(fixture("p2-f2").is_some());
        assert!(fixture("ell-7-0-0-1-m1-0").is_some());
    }

    #[test]
    fn elliptic_fixtures_are_smooth() {
        for (p, a) in ELLIPTIC {
            assert!(elliptic(p, a).unwrap().variety.smooth_asserted(), "{p} {a:?}");
        }
        // y^2 + xy + y = x^3 − x is singular mod 7.
        assert!(!elliptic(7, [1, 0, 1, -1, 0]).unwrap().variety.smooth_asserted());
        // Textbook value: y^2 = x^3 − x has discriminant 64.
        assert_eq!(weierstrass_discriminant([0, 0, 0, -1, 0]), 64);
    }

    /// Rank-2 2×4 matrices over F_p divided by |GL_2(F_p)|.
    fn grassmannian_by_matrices(p: u64) -> u64 {
        let vecs: Vec<[u64; 4]> = (0..p.pow(4))
            .map(|i| [i % p, i / p % p, i / (p * p) % p, i / (p * p * p)])
            .collect();
        let independent = |u: &[u64; 4], v: &[u64; 4]| {
            (0..4).any(|i| (i + 1..4).any(|j| !(u[i] * v[j] + p * p - u[j] * v[i] % p).is_multiple_of(p)))
        };
        let rank2 = vecs
            .iter()
            .flat_map(|u| vecs.iter().map(move |v| (u, v)))
            .filter(|(u, v)| independent(u, v))
            .count() as u64;
        let gl2 = (p * p - 1) * (p * p - p);
        rank2 / gl2
    }

    #[test]
    fn grassmannian_oracle_matches_matrix_count() {
        for p in [2, 3] {
            assert_eq!(Oracle::Grassmannian24.count(p, 1), grassmannian_by_matrices(p) as u128);
        }
    }

    #[test]
    fn oracles_hold_for_small_fields() {
        let cfg = CountConfig::default();
        for f in catalog() {
            let Some(oracle) = f.oracle else { continue };
            let q = f.variety.q();
            if q > 5 {
                continue;
            }
            let m = max_depth(&f.variety, 3, cfg.budget);
            let t = count_table(&f.variety, m, &cfg).unwrap();
            for n in 1..=m {
                assert_eq!(t.get(n).unwrap() as u128, oracle.count(q, n as u32), "{} n={n}", f.id);
            }
        }
    }

    #[test]
    fn engine_agrees_with_naive_counter() {
        for f in catalog() {
            let v = &f.variety;
            for n in 1..=2 {
                if super::super::required_candidates(v, n) > 20_000 {
                    continue;
                }
                let fast = crate::counting::count_points(v, n, &CountConfig::default()).unwrap();
                let slow = count_points_naive(v, n, 20_000).unwrap();
                assert_eq!(fast, slow, "{} n={n}", f.id);
            }
        }
    }

    #[test]
    fn census_is_nonnegative_integral() {
        let cfg = CountConfig::with_budget(1 << 18);
        for f in catalog() {
            let m = max_depth(&f.variety, 8, cfg.budget);
            let t = count_table(&f.variety, m, &cfg).unwrap();
            closed_point_census(&t).unwrap_or_else(|e| panic!("{}: {e}", f.id));
        }
    }

    #[test]
    fn elliptic_counts_follow_frobenius_recurrence() {
        // N_n = 1 + q^n − s_n with s_1 = a, s_2 = a^2 − 2q, s_n = a s_{n−1} − q s_{n−2}.
        let cfg = CountConfig::default();
        for (p, a_inv) in ELLIPTIC.iter().filter(|(p, _)| *p <= 7) {
            let f = elliptic(*p, *a_inv).unwrap();
            let t = count_table(&f.variety, 3, &cfg).unwrap();
            let q = *p as i128;
            let a = q + 1 - t.counts[0] as i128;
            let mut s = vec![2i128, a];
            for n in 2..=3 {
                s.push(a * s[n - 1] - q * s[n - 2]);
            }
            for n in 1..=3 {
                assert_eq!(t.counts[n - 1] as i128, 1 + q.pow(n as u32) - s[n], "{} n={n}", f.id);
            }
        }
    }
}

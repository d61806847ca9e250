//! Exhaustive enumeration kernel.
//!
//! Points are enumerated as (prefix, last coordinate). For each prefix the
//! polynomial is collapsed to a univariate in the last coordinate, which is
//! then swept over the whole field by Horner's rule. All arithmetic runs on
//! [`LogField`] tables. The prefix space is cut into a fixed number of
//! chunks that depends only on the problem, never on the thread count, and
//! chunk results are combined in chunk order.

use rayon::prelude::*;

use crate::ffield::{LogField, LOG_ZERO};

/// Monomial in the prefix variables with a log-form coefficient.
#[derive(Clone, Debug)]
struct LogTerm {
    coeff: u32,
    exps: Vec<(usize, u32)>,
}

/// Polynomial grouped by the exponent of the swept (last free) variable.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPoly {
    by_power: Vec<Vec<LogTerm>>,
}

/// Equations restricted to an affine space of `nfree` free coordinates.
#[derive(Clone, Debug)]
pub(crate) struct AffineProblem {
    nfree: usize,
    polys: Vec<CompiledPoly>,
}

/// How a coordinate of the ambient space is treated in a sub-problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Coord {
    Zero,
    One,
    Free,
}

impl AffineProblem {
    /// Specializes log-form polynomials (exponent vector, log coefficient)
    /// by fixing some coordinates to 0 or 1. Free coordinates keep their
    /// relative order; the last one is swept.
    pub(crate) fn specialize(polys: &[Vec<(Vec<u32>, u32)>], coords: &[Coord]) -> Self {
        let free: Vec<usize> = (0..coords.len()).filter(|&i| coords[i] == Coord::Free).collect();
        let nfree = free.len();
        let compiled = polys
            .iter()
            .map(|terms| {
                let mut by_power: Vec<Vec<LogTerm>> = Vec::new();
                for (e, c) in terms {
                    if e.iter().zip(coords).any(|(&d, &k)| d > 0 && k == Coord::Zero) {
                        continue;
                    }
                    let (power, exps) = match free.split_last() {
                        None => (0, Vec::new()),
                        Some((&last, prefix)) => (
                            e[last] as usize,
                            prefix
                                .iter()
                                .enumerate()
                                .filter(|(_, &v)| e[v] > 0)
                                .map(|(slot, &v)| (slot, e[v]))
                                .collect(),
                        ),
                    };
                    if by_power.len() <= power {
                        by_power.resize(power + 1, Vec::new());
                    }
                    by_power[power].push(LogTerm { coeff: *c, exps });
                }
                CompiledPoly { by_power }
            })
            .collect();
        Self {
            nfree,
            polys: compiled,
        }
    }

    /// Number of points this sub-problem enumerates.
    pub(crate) fn candidates(&self, q: u64) -> u128 {
        (q as u128).pow(self.nfree as u32)
    }

    fn prefix_len(&self) -> usize {
        self.nfree.saturating_sub(1)
    }
}

#[inline]
fn digit_to_log(d: u32) -> u32 {
    if d == 0 {
        LOG_ZERO
    } else {
        d - 1
    }
}

/// Univariate coefficients (log form) of `poly` at a fixed prefix.
fn collapse(field: &LogField, poly: &CompiledPoly, prefix: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let order = field.order() as u64;
    for terms in &poly.by_power {
        let mut acc = LOG_ZERO;
        for t in terms {
            let mut l = t.coeff as u64;
            let mut zero = false;
            for &(slot, d) in &t.exps {
                let x = prefix[slot];
                if x == LOG_ZERO {
                    zero = true;
                    break;
                }
                l += x as u64 * d as u64;
            }
            if !zero {
                acc = field.add(acc, (l % order) as u32);
            }
        }
        out.push(acc);
    }
}

#[inline]
fn horner(field: &LogField, coeffs: &[u32], y: u32) -> u32 {
    let Some((&top, rest)) = coeffs.split_last() else {
        return LOG_ZERO;
    };
    let mut r = top;
    for &c in rest.iter().rev() {
        r = field.add(field.mul(r, y), c);
    }
    r
}

/// Fixed chunking of `[0, total)`.
fn chunk_bounds(total: u64, max_chunks: u64) -> Vec<(u64, u64)> {
    if total == 0 {
        return Vec::new();
    }
    let n = total.min(max_chunks);
    let size = total.div_ceil(n);
    (0..n)
        .map(|i| (i * size, ((i + 1) * size).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Number of prefix chunks used for a sub-problem.
pub(crate) const DEFAULT_CHUNKS: u64 = 256;

/// Walks prefixes `[start, end)` (base-q digits, slot 0 fastest), calling
/// `visit` with the decoded log-form prefix.
fn walk_prefixes(
    field: &LogField,
    len: usize,
    start: u64,
    end: u64,
    mut visit: impl FnMut(&[u32]),
) {
    let q = field.size() as u64;
    let mut digits = vec![0u32; len];
    let mut rest = start;
    for d in digits.iter_mut() {
        *d = (rest % q) as u32;
        rest /= q;
    }
    let mut prefix: Vec<u32> = digits.iter().map(|&d| digit_to_log(d)).collect();
    for _ in start..end {
        visit(&prefix);
        for (d, x) in digits.iter_mut().zip(prefix.iter_mut()) {
            *d += 1;
            if (*d as u64) < q {
                *x = digit_to_log(*d);
                break;
            }
            *d = 0;
            *x = LOG_ZERO;
        }
    }
}

fn run_chunks<T: Send>(
    nchunks: usize,
    threads: Option<usize>,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    match threads {
        Some(1) => (0..nchunks).map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| (0..nchunks).into_par_iter().map(&f).collect()),
            Err(_) => (0..nchunks).map(f).collect(),
        },
        None => (0..nchunks).into_par_iter().map(f).collect(),
    }
}

/// Per-chunk counts of common zeros of all polynomials.
pub(crate) fn count_chunks(
    field: &LogField,
    problem: &AffineProblem,
    max_chunks: u64,
    threads: Option<usize>,
) -> Vec<u64> {
    if problem.nfree == 0 {
        let all_zero = problem
            .polys
            .iter()
            .all(|p| p.by_power.first().map_or(LOG_ZERO, |ts| {
                ts.iter().fold(LOG_ZERO, |acc, t| field.add(acc, t.coeff))
            }) == LOG_ZERO);
        return vec![all_zero as u64];
    }
    let q = field.size() as u64;
    let total = q.pow(problem.prefix_len() as u32);
    let bounds = chunk_bounds(total, max_chunks);
    run_chunks(bounds.len(), threads, |c| {
        let (start, end) = bounds[c];
        if problem.polys.is_empty() {
            return (end - start) * q;
        }
        let mut coeffs: Vec<Vec<u32>> = vec![Vec::new(); problem.polys.len()];
        let mut count = 0u64;
        walk_prefixes(field, problem.prefix_len(), start, end, |prefix| {
            for (poly, out) in problem.polys.iter().zip(coeffs.iter_mut()) {
                collapse(field, poly, prefix, out);
            }
            let (first, others) = coeffs.split_first().expect("at least one polynomial");
            for y in field.elements() {
                if horner(field, first, y) == LOG_ZERO
                    && others.iter().all(|c| horner(field, c, y) == LOG_ZERO)
                {
                    count += 1;
                }
            }
        });
        count
    })
}

/// Value histogram of the first polynomial over the whole affine space,
/// indexed by little-endian base-p index of the value.
pub(crate) fn value_histogram(
    field: &LogField,
    problem: &AffineProblem,
    max_chunks: u64,
    threads: Option<usize>,
) -> Vec<u64> {
    let q = field.size() as usize;
    let mut hist = vec![0u64; q];
    let Some(poly) = problem.polys.first() else {
        hist[0] = problem.candidates(q as u64) as u64;
        return hist;
    };
    if problem.nfree == 0 {
        let v = poly.by_power.first().map_or(LOG_ZERO, |ts| {
            ts.iter().fold(LOG_ZERO, |acc, t| field.add(acc, t.coeff))
        });
        hist[field.index_of(v) as usize] += 1;
        return hist;
    }
    let total = (q as u64).pow(problem.prefix_len() as u32);
    let bounds = chunk_bounds(total, max_chunks);
    let parts = run_chunks(bounds.len(), threads, |c| {
        let (start, end) = bounds[c];
        let mut local = vec![0u64; q];
        let mut coeffs = Vec::new();
        walk_prefixes(field, problem.prefix_len(), start, end, |prefix| {
            collapse(field, poly, prefix, &mut coeffs);
            for y in field.elements() {
                local[field.index_of(horner(field, &coeffs, y)) as usize] += 1;
            }
        });
        local
    });
    for part in parts {
        for (h, v) in hist.iter_mut().zip(part) {
            *h += v;
        }
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldCtx;

    #[test]
    fn chunking_covers_range() {
        for (total, max) in [(1, 4), (10, 3), (1000, 256), (7, 7), (5, 100)] {
            let b = chunk_bounds(total, max);
            assert_eq!(b.first().unwrap().0, 0);
            assert_eq!(b.last().unwrap().1, total);
            for w in b.windows(2) {
                assert_eq!(w[0].1, w[1].0);
            }
        }
        assert!(chunk_bounds(0, 4).is_empty());
    }

    #[test]
    fn walk_visits_every_prefix_once() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let lf = LogField::new(&ctx, 100).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        walk_prefixes(&lf, 2, 0, 9, |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 9);
        let mut tail = Vec::new();
        walk_prefixes(&lf, 2, 4, 9, |p| tail.push(p.to_vec()));
        assert_eq!(tail.len(), 5);
    }

    #[test]
    fn line_in_affine_plane() {
        // x + y + 1 over F_5: five points.
        let ctx = FieldCtx::new(5, 1).unwrap();
        let lf = LogField::new(&ctx, 100).unwrap();
        let one = lf.constant(1);
        let poly = vec![(vec![1, 0], one), (vec![0, 1], one), (vec![0, 0], one)];
        let prob = AffineProblem::specialize(std::slice::from_ref(&poly), &[Coord::Free, Coord::Free]);
        let total: u64 = count_chunks(&lf, &prob, 3, Some(1)).iter().sum();
        assert_eq!(total, 5);
        let hist = value_histogram(&lf, &prob, 2, Some(1));
        assert_eq!(hist, vec![5; 5]);
    }
}

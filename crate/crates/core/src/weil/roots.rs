//! Aberth–Ehrlich simultaneous root finding.
//!
//! Deterministic: starting points lie on a fixed spiral around the circle
//! of radius `|a_0/a_n|^{1/n}`, and no randomness is involved. Multiple
//! roots slow Aberth down to linear convergence, so exact inputs are first
//! split into square-free parts (see [`reciprocal_roots`]).

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug)]
pub struct AberthConfig {
    pub max_iterations: usize,
    /// Relative step size at which a root counts as converged.
    pub tolerance: f64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        Self {
            max_iterations: 1000,
            tolerance: 1e-13,
        }
    }
}

impl AberthConfig {
    /// Default settings with the tolerance floored at a few ulps of `F`.
    pub fn for_type<F: Real>() -> Self {
        let eps = F::epsilon().to_f64();
        Self {
            tolerance: Self::default().tolerance.max(16.0 * eps),
            ..Self::default()
        }
    }
}

fn eval<F: Real>(coeffs: &[F], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::new(F::zero(), F::zero());
    let mut dp = p;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + Complex::new(c, F::zero());
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[i] x^i` (leading coefficient nonzero).
pub fn aberth<F: Real>(coeffs: &[F], cfg: &AberthConfig) -> Result<Vec<Complex<F>>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![Complex::new(F::zero(), F::zero()); zeros];
    let a = &coeffs[zeros.min(coeffs.len())..];
    let n = a.len().saturating_sub(1);
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(Complex::new(-a[0] / a[1], F::zero()));
        return Ok(roots);
    }

    let nf = F::from_f64(n as f64);
    let radius = (a[0].abs() / a[n].abs()).powf(F::one() / nf);
    let tau = F::from_f64(std::f64::consts::TAU);
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let kf = F::from_f64(k as f64);
            let r = radius * (F::from_f64(0.8) + F::from_f64(0.4) * kf / nf);
            Complex::from_polar(r, tau * kf / nf + F::from_f64(0.4))
        })
        .collect();

    let tol = F::from_f64(cfg.tolerance);
    for _ in 0..cfg.max_iterations {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = eval(a, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion = (0..n)
                .filter(|&j| j != k)
                .fold(Complex::new(F::zero(), F::zero()), |s, j| s + (z[k] - z[j]).inv());
            let step = ratio / (Complex::new(F::one(), F::zero()) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                done = false;
                continue;
            }
            z[k] = z[k] - step;
            if step.norm() > tol * z[k].norm().max(F::one()) {
                done = false;
            }
        }
        if done {
            roots.extend(z);
            return Ok(roots);
        }
    }
    let residual = z
        .iter()
        .map(|&x| eval(a, x).0.norm().to_f64())
        .fold(0.0, f64::max);
    Err(Error::NoConvergence {
        iterations: cfg.max_iterations,
        residual,
    })
}

/// Snaps negligible imaginary parts to zero and orders roots by real then
/// imaginary part, so reports list them in a fixed order.
pub fn canonicalize(roots: &mut [Complex<f64>]) {
    for z in roots.iter_mut() {
        if z.im.abs() <= 1e-12 * z.norm().max(1.0) {
            z.im = 0.0;
        }
        if z.re == 0.0 {
            z.re = 0.0;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Reciprocal roots `α` of `P(t) = ∏ (1 − α t)` with multiplicity: the
/// roots of the reversed polynomial, found factor by factor on its exact
/// square-free decomposition.
pub fn reciprocal_roots(p: &IntPoly, cfg: &AberthConfig) -> Result<Vec<Complex<f64>>> {
    let rev = p.reversed().to_rational();
    let mut out = Vec::new();
    for (mult, factor) in rev.squarefree_decomposition() {
        // Clear denominators before converting, to keep magnitudes sane.
        let lcm = factor
            .coeffs()
            .iter()
            .fold(BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, c.denom()));
        let coeffs: Vec<f64> = factor
            .coeffs()
            .iter()
            .map(|c| (c.numer() * (&lcm / c.denom())).to_f64().unwrap_or(f64::NAN))
            .collect();
        let roots = aberth(&coeffs, cfg)?;
        for _ in 0..mult {
            out.extend(roots.iter().copied());
        }
    }
    canonicalize(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn quadratic_roots() {
        // x^2 − 3x + 2
        let mut r = aberth(&[2.0, -3.0, 1.0], &AberthConfig::default()).unwrap();
        canonicalize(&mut r);
        assert!(close(r[0], Complex::new(1.0, 0.0), 1e-12));
        assert!(close(r[1], Complex::new(2.0, 0.0), 1e-12));
        // x^2 + 1
        let mut r = aberth(&[1.0, 0.0, 1.0], &AberthConfig::default()).unwrap();
        canonicalize(&mut r);
        assert!(close(r[0], Complex::new(0.0, -1.0), 1e-12));
        assert!(close(r[1], Complex::new(0.0, 1.0), 1e-12));
    }

    #[test]
    fn zero_and_linear_cases() {
        let r = aberth(&[0.0, 0.0, 2.0, 2.0], &AberthConfig::default()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().filter(|z| z.is_zero()).count() == 2);
        assert!(aberth::<f64>(&[3.0], &AberthConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn runs_in_single_precision() {
        let cfg = AberthConfig::for_type::<f32>();
        let r = aberth(&[-6.0f32, 11.0, -6.0, 1.0], &cfg).unwrap();
        let mut mods: Vec<f32> = r.iter().map(|z| z.norm()).collect();
        mods.sort_by(f32::total_cmp);
        for (m, e) in mods.iter().zip([1.0, 2.0, 3.0]) {
            assert!((m - e).abs() < 1e-4);
        }
    }

    #[test]
    fn repeated_roots_through_squarefree_split() {
        // (1 − 2t)^3 (1 + t)
        let p = IntPoly::from_i64s(&[1, -6, 12, -8])
            .mul(&IntPoly::from_i64s(&[1, 1]));
        let r = reciprocal_roots(&p, &AberthConfig::default()).unwrap();
        assert_eq!(r.len(), 4);
        assert!(close(r[0], Complex::new(-1.0, 0.0), 1e-12));
        for z in &r[1..] {
            assert!(close(*z, Complex::new(2.0, 0.0), 1e-12));
        }
    }

    #[test]
    fn elliptic_pair_has_modulus_root_q() {
        // 1 − 2t + 5t^2: reciprocal roots 1 ± 2i.
        let r = reciprocal_roots(&IntPoly::from_i64s(&[1, -2, 5]), &AberthConfig::default()).unwrap();
        for z in r {
            assert!((z.norm() - 5f64.sqrt()).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn product_of_roots_matches_coefficients(
            mut c in proptest::collection::vec(-20i64..=20, 2..=9),
            lead in 1i64..=5,
            c0 in 1i64..=20,
        ) {
            c[0] = c0;
            let last = c.len() - 1;
            c[last] = lead;
            let p = IntPoly::from_i64s(&c);
            let roots = aberth(&p.to_f64(), &AberthConfig::default()).unwrap();
            prop_assert_eq!(roots.len(), last);
            let prod: f64 = roots.iter().map(|z| z.norm()).product();
            let expect = (c0 as f64 / lead as f64).abs();
            prop_assert!((prod - expect).abs() <= 1e-9 * expect, "{} vs {}", prod, expect);
        }
    }
}

//! Dense exact linear algebra over a field scalar.

use crate::scalar::Scalar;

/// Determinant by Gaussian elimination, pivoting on the first nonzero entry.
pub fn determinant<S: Scalar>(mut a: Vec<Vec<S>>) -> S {
    let n = a.len();
    let mut det = S::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return S::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / p.clone();
            for c in col..n {
                let v = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * v;
            }
        }
    }
    det
}

/// Solves `a · x = b` for a possibly non-square system. Returns one solution
/// (free variables set to zero) or `None` when the system is inconsistent.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, row);
        let inv = S::one() / m[row][col].clone();
        for c in col..=cols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..rows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=cols {
                let v = m[row][c].clone();
                m[r][c] = m[r][c].clone() - f.clone() * v;
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn mat(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(mat(&[&[2, 1], &[1, 3]])), r(5));
        assert_eq!(determinant(mat(&[&[0, 1], &[1, 0]])), r(-1));
        assert_eq!(determinant(mat(&[&[1, 2], &[2, 4]])), r(0));
        assert_eq!(determinant::<Rational>(Vec::new()), r(1));
        let d = determinant(vec![vec![2.0f64, 1.0], vec![1.0, 3.0]]);
        assert!((d - 5.0).abs() < 1e-12);
    }

    #[test]
    fn solving() {
        let a = mat(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = solve(&a, &[r(3), r(1), r(4)]).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
        assert!(solve(&a, &[r(3), r(1), r(5)]).is_none());
        // Underdetermined: free variable set to zero.
        let x = solve(&mat(&[&[1, 1]]), &[r(2)]).unwrap();
        assert_eq!(x, vec![r(2), r(0)]);
    }
}

//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Determinants and leading minors use fraction-free (Bareiss) elimination,
//! so every intermediate value stays an integer.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// All leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
///
/// Bareiss pivots without row exchange are exactly these minors; once a zero
/// pivot shows up the remaining minors are computed one by one.
pub fn leading_minors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    let mut minors = Vec::with_capacity(n);
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            minors.push(BigInt::zero());
            for size in k + 2..=n {
                let sub: Vec<Vec<BigInt>> =
                    rows[..size].iter().map(|r| r[..size].to_vec()).collect();
                minors.push(determinant(&sub));
            }
            return minors;
        }
        minors.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    minors
}

/// Sylvester's criterion on a symmetric integer matrix.
pub fn is_positive_definite(rows: &[Vec<BigInt>]) -> bool {
    leading_minors(rows).iter().all(|m| m.is_positive())
}

/// Rank of an arbitrary `m x c` integer matrix by rational elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] / &a[r][col];
            for j in col..cols {
                let v = &a[i][j] - &factor * &a[r][j];
                a[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

/// Exact `G = L D L^T` with `L` unit lower triangular.
///
/// Returns `(d, mu)` where `mu[i][j] = L[j][i]` for `j > i`, so that
/// `x^T G x = sum_i d[i] * (x[i] + sum_{j>i} mu[i][j] x[j])^2`.
/// `None` if some pivot is not positive.
pub fn ldl_decomposition(
    rows: &[Vec<BigInt>],
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = rows.len();
    let g = |i: usize, j: usize| BigRational::from_integer(rows[i][j].clone());
    // low[j][i] = L[j][i] for i < j
    let mut low: Vec<Vec<BigRational>> = (0..n).map(vec_zero).collect();
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    for i in 0..n {
        let mut di = g(i, i);
        for k in 0..i {
            di -= &low[i][k] * &low[i][k] * &d[k];
        }
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..n {
            let mut v = g(j, i);
            for k in 0..i {
                v -= &low[j][k] * &low[i][k] * &d[k];
            }
            low[j][i] = v / &di;
        }
        d.push(di);
    }
    let mu = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j > i {
                        low[j][i].clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    Some((d, mu))
}

/// Gram-Schmidt data of a Gram matrix: `mu[i][j]` for `j < i` and the
/// squared lengths `b[i]` of the orthogonalised vectors.
fn gram_schmidt(g: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = g.len();
    let mut mu = vec![vec_zero(n); n];
    let mut r = vec![vec_zero(n); n];
    let mut b = vec_zero(n);
    for i in 0..n {
        for j in 0..=i {
            let mut v = BigRational::from_integer(g[i][j].clone());
            for k in 0..j {
                v -= &mu[j][k] * &r[i][k];
            }
            if j < i {
                mu[i][j] = &v / &b[j];
            } else {
                b[i] = v.clone();
            }
            r[i][j] = v;
        }
    }
    (mu, b)
}

/// LLL reduction (`delta = 99/100`) of a positive definite Gram matrix,
/// returning the Gram matrix of the reduced basis. The result is
/// `U^T G U` for a unimodular `U`, so it describes the same lattice.
pub fn lll_reduce(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    let mut g = rows.to_vec();
    let delta = BigRational::new(99.into(), 100.into());
    let half = BigRational::new(1.into(), 2.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&g);
            let q = (&mu[k][j] + &half).floor().to_integer();
            if !q.is_zero() {
                // b_k -= q b_j
                for i in 0..n {
                    let t = &q * &g[j][i];
                    g[k][i] -= t;
                }
                for i in 0..n {
                    let t = &q * &g[i][j];
                    g[i][k] -= t;
                }
            }
        }
        let (mu, b) = gram_schmidt(&g);
        let m = &mu[k][k - 1];
        if b[k] >= (&delta - m * m) * &b[k - 1] {
            k += 1;
        } else {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            k = k.max(2) - 1;
        }
    }
    g
}

fn vec_zero(len: usize) -> Vec<BigRational> {
    (0..len).map(|_| BigRational::zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&mat(&[&[2, 1], &[1, 2]])), BigInt::from(3));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 1]])), BigInt::from(-3));
        // needs a row swap
        assert_eq!(
            determinant(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])),
            BigInt::from(-5)
        );
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn leading_minors_with_zero_pivot() {
        let m = mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        assert_eq!(
            leading_minors(&m),
            vec![BigInt::zero(), BigInt::from(-1), BigInt::from(-2)]
        );
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1], &[2, 2, 0]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn ldl_reassembles_quadratic_form() {
        let g = mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let (d, mu) = ldl_decomposition(&g).unwrap();
        let x = [3i64, -2, 5];
        let mut q = BigRational::zero();
        for i in 0..3 {
            let mut y = BigRational::from_integer(x[i].into());
            for j in i + 1..3 {
                y += &mu[i][j] * BigRational::from_integer(x[j].into());
            }
            q += &d[i] * &y * &y;
        }
        let mut exact = 0i64;
        for i in 0..3 {
            for j in 0..3 {
                exact += x[i] * [[2, -1, 0], [-1, 2, -1], [0, -1, 2]][i][j] * x[j];
            }
        }
        assert_eq!(q, BigRational::from_integer(exact.into()));
    }

    #[test]
    fn lll_keeps_the_lattice() {
        let skewed = mat(&[&[1, 7, 3], &[7, 50, 21], &[3, 21, 10]]);
        let reduced = lll_reduce(&skewed);
        assert_eq!(determinant(&reduced), determinant(&skewed));
        let diag: Vec<BigInt> = (0..3).map(|i| reduced[i][i].clone()).collect();
        assert!(diag.iter().all(|d| *d <= BigInt::from(2)), "{diag:?}");
    }
}

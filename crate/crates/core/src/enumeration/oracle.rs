//! Exhaustive box search, independent of the pruned enumerator.
//!
//! The box half-width comes from an exact rational lower bound `lambda` on
//! the smallest eigenvalue of `G`: every `x` with `x^T G x <= K` satisfies
//! `|x_i|^2 <= |x|^2 <= K / lambda`. `lambda` is found by bisection on the
//! exact test "`q G - p I` is positive definite", so no floating point is
//! involved. The box is laid out in an LLL-reduced basis, which leaves the
//! counts unchanged and keeps `lambda` away from zero on skewed inputs.
//! Practical for ranks up to about eight at small `K`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Census, Method, DEFAULT_NODE_LIMIT};
use crate::lattice::{GramMatrix, Lattice};
use crate::linalg;
use crate::{Error, Result};

const BISECTION_STEPS: u32 = 24;

/// `(p, q)` with `0 < p / q < lambda_min(G)`, `q` a power of two.
pub fn eigenvalue_lower_bound(gram: &GramMatrix) -> (BigInt, BigInt) {
    let n = gram.rank();
    let shifted_is_pd = |p: &BigInt, q: &BigInt| {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = gram.entry(i, j) * q;
                        if i == j {
                            v - p
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        linalg::is_positive_definite(&rows)
    };
    // lambda_min <= smallest diagonal entry; work in units of 1 / 2^steps
    let min_diag = (0..n)
        .map(|i| gram.entry(i, i).clone())
        .min()
        .unwrap_or_else(BigInt::one);
    let q = BigInt::one() << BISECTION_STEPS;
    let mut lo = BigInt::zero();
    let mut hi = min_diag * &q;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if shifted_is_pd(&mid, &q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo.is_zero() {
        // lambda_min below 2^-steps: fall back to a finer scale
        let mut scale = q.clone();
        loop {
            scale <<= BISECTION_STEPS;
            if shifted_is_pd(&BigInt::one(), &scale) {
                return (BigInt::one(), scale);
            }
        }
    }
    (lo, q)
}

/// Smallest `B` with `B^2 >= max_norm * q / p`.
pub fn box_radius(max_norm: u64, p: &BigInt, q: &BigInt) -> BigUint {
    let num = (BigInt::from(max_norm) * q)
        .to_biguint()
        .unwrap_or_default();
    let den = p.to_biguint().unwrap_or_else(BigUint::one);
    let target = num.div_ceil(&den);
    let mut b = target.sqrt();
    if &b * &b < target {
        b += 1u32;
    }
    b
}

pub fn census_oracle(lattice: &Lattice, max_norm: u64) -> Result<Census> {
    census_oracle_with_limit(lattice, max_norm, DEFAULT_NODE_LIMIT)
}

/// Scans `[-B, B]^n` point by point; fails if the box exceeds `limit` points.
pub fn census_oracle_with_limit(lattice: &Lattice, max_norm: u64, limit: u64) -> Result<Census> {
    if max_norm == 0 {
        return Err(Error::InvalidArgument("max_norm must be at least 1".into()));
    }
    let n = lattice.rank();
    let gram = GramMatrix::new(linalg::lll_reduce(lattice.gram().rows()))?;
    let (p, q) = eigenvalue_lower_bound(&gram);
    let exceeded = Error::ResourceLimitExceeded {
        what: "oracle box size",
        limit,
    };
    let b = box_radius(max_norm, &p, &q)
        .to_i64()
        .ok_or(exceeded.clone())?;
    let side = BigUint::from(2 * b as u64 + 1);
    if side.pow(n as u32) > BigUint::from(limit) {
        return Err(exceeded);
    }
    let g: Vec<i128> = gram.to_i64()?.into_iter().map(i128::from).collect();

    let mut x = vec![-b; n];
    // gx = G x, q = x^T G x, maintained incrementally
    let mut gx: Vec<i128> = (0..n)
        .map(|i| (0..n).map(|j| g[i * n + j] * x[j] as i128).sum())
        .collect();
    let mut norm: i128 = (0..n).map(|i| x[i] as i128 * gx[i]).sum();
    let mut tally = vec![0u64; max_norm as usize + 1];
    loop {
        if (0..=max_norm as i128).contains(&norm) {
            tally[norm as usize] += 1;
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == n {
                return Ok(Census::from_parts(
                    n,
                    tally.into_iter().map(BigUint::from).collect(),
                    Method::Oracle,
                ));
            }
            let delta: i64 = if x[i] < b { 1 } else { -2 * b };
            let d = delta as i128;
            norm += 2 * d * gx[i] + d * d * g[i * n + i];
            for (j, v) in gx.iter_mut().enumerate() {
                *v += d * g[j * n + i];
            }
            x[i] += delta;
            if delta == 1 {
                break;
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_lattice, Family, LatticeDescriptor};

    fn counts(d: LatticeDescriptor, k: u64) -> Vec<u64> {
        census_oracle(&make_lattice(&d).unwrap(), k)
            .unwrap()
            .counts()
            .iter()
            .map(|v| v.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn hand_enumerated_cases() {
        assert_eq!(counts(LatticeDescriptor::zn(2), 4), [1, 4, 4, 0, 4]);
        // every A2 norm 2(a^2 + ab + b^2) is even
        assert_eq!(
            counts(LatticeDescriptor::family(Family::A, 2), 4),
            [1, 0, 6, 0, 0]
        );
        assert_eq!(
            counts(LatticeDescriptor::family(Family::A, 2), 8),
            [1, 0, 6, 0, 0, 0, 6, 0, 6]
        );
        assert_eq!(
            counts(LatticeDescriptor::zn(1), 9),
            [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
        );
    }

    #[test]
    fn eigenvalue_bound_is_below_and_tight() {
        // A2 eigenvalues are 1 and 3
        let a2 = make_lattice(&LatticeDescriptor::family(Family::A, 2)).unwrap();
        let (p, q) = eigenvalue_lower_bound(a2.gram());
        assert!(p < q);
        assert!(&p * 2 > q);
        // Z^3: lambda = 1
        let z3 = make_lattice(&LatticeDescriptor::zn(3)).unwrap();
        let (p, q) = eigenvalue_lower_bound(z3.gram());
        assert!(p < q && &p * 1000 > &q * 999);
        assert_eq!(box_radius(4, &p, &q), BigUint::from(3u32));
    }

    #[test]
    fn box_limit() {
        let z6 = make_lattice(&LatticeDescriptor::zn(6)).unwrap();
        assert!(matches!(
            census_oracle_with_limit(&z6, 4, 1000),
            Err(Error::ResourceLimitExceeded { .. })
        ));
    }
}

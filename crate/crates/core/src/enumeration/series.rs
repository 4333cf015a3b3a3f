use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Census, Method};
use crate::{Error, Result};

/// Coefficients of `(sum_{z in Z} x^{z^2})^n` up to degree `max_norm`.
pub fn census_zn_dp(n: usize, max_norm: u64) -> Census {
    let len = max_norm as usize + 1;
    let squares: Vec<usize> = (1..)
        .map(|z: usize| z * z)
        .take_while(|&s| s < len)
        .collect();
    let mut acc = vec![BigUint::zero(); len];
    acc[0] = BigUint::one();
    for _ in 0..n {
        let mut next = acc.clone();
        for k in 1..len {
            for &s in squares.iter().take_while(|&&s| s <= k) {
                if !acc[k - s].is_zero() {
                    next[k] += &acc[k - s] * 2u32;
                }
            }
        }
        acc = next;
    }
    Census::from_parts(n, acc, Method::Dp)
}

/// Census of the orthogonal direct sum: `m_k = sum_i a_i b_{k-i}`.
pub fn census_convolve(a: &Census, b: &Census, max_norm: u64) -> Result<Census> {
    let available = a.max_norm().min(b.max_norm());
    if available < max_norm {
        return Err(Error::InsufficientTruncation {
            available,
            requested: max_norm,
        });
    }
    let len = max_norm as usize + 1;
    let (ca, cb) = (a.counts(), b.counts());
    let mut out = vec![BigUint::zero(); len];
    for (i, x) in ca[..len].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in cb[..len - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    Ok(Census::from_parts(
        a.rank() + b.rank(),
        out,
        Method::Convolved,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(c: &Census) -> Vec<u64> {
        use num_traits::ToPrimitive;
        c.counts().iter().map(|v| v.to_u64().unwrap()).collect()
    }

    #[test]
    fn dp_small_ranks() {
        assert_eq!(census_zn_dp(8, 2).on_sphere(2), &BigUint::from(112u32));
        assert_eq!(census_zn_dp(6, 2).on_sphere(2), &BigUint::from(60u32));
        assert_eq!(counts(&census_zn_dp(1, 5)), [1, 2, 0, 0, 2, 0]);
        assert_eq!(counts(&census_zn_dp(2, 4)), [1, 4, 4, 0, 4]);
        assert_eq!(counts(&census_zn_dp(1, 9)), [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn convolution_laws() {
        let z4 = census_zn_dp(4, 2);
        assert!(census_convolve(&z4, &z4, 2)
            .unwrap()
            .same_counts(&census_zn_dp(8, 2)));
        let e = Census::point(5);
        let z3 = census_zn_dp(3, 5);
        assert!(census_convolve(&z3, &e, 5).unwrap().same_counts(&z3));
        assert!(matches!(
            census_convolve(&z3, &census_zn_dp(1, 3), 5),
            Err(Error::InsufficientTruncation {
                available: 3,
                requested: 5
            })
        ));
    }

    #[test]
    fn e8_plus_z1_by_formula() {
        // m(E8) = 1, 0, 240 up to norm 2; m_2 = 240*1 + 0*2 + 1*0
        let e8 = Census::from_parts(
            8,
            vec![1u32.into(), 0u32.into(), 240u32.into()],
            Method::Pruned,
        );
        let z1 = census_zn_dp(1, 2);
        let sum = census_convolve(&e8, &z1, 2).unwrap();
        assert_eq!(counts(&sum), [1, 2, 240]);
        assert_eq!(sum.rank(), 9);
    }
}

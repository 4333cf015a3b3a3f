//! Exact counts of lattice vectors by squared norm.
//!
//! Three independent routes produce a [`Census`]: pruned depth-first
//! enumeration over a triangular decomposition of the Gram matrix
//! ([`count_by_norm`]), a certified box search ([`census_oracle`]), and
//! power-series products for `Z^n` and direct sums ([`census_zn_dp`],
//! [`census_convolve`]). They are meant to agree bit for bit.

mod oracle;
mod pruned;
mod series;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use oracle::{box_radius, census_oracle, census_oracle_with_limit, eigenvalue_lower_bound};
pub use pruned::{
    count_by_norm, count_by_norm_with_limit, list_vectors_with_norm, Plan, ShortVectorList,
};
pub use series::{census_convolve, census_zn_dp};

/// Default ceiling on visited enumeration nodes (or box points for the
/// oracle).
pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Pruned,
    Dp,
    Oracle,
    Convolved,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Pruned => "pruned",
            Method::Dp => "dp",
            Method::Oracle => "oracle",
            Method::Convolved => "convolved",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// On-sphere counts `m_k`, `k = 0..=max_norm`, of a rank-`n` lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    n: usize,
    max_norm: u64,
    on_sphere: Vec<BigUint>,
    method: Method,
}

impl Census {
    /// Validates `m_0 = 1` and evenness of the other counts.
    pub fn new(n: usize, on_sphere: Vec<BigUint>, method: Method) -> Result<Census> {
        if on_sphere.len() < 2 {
            return Err(Error::InvalidArgument("census needs max_norm >= 1".into()));
        }
        if !on_sphere[0].is_one() {
            return Err(Error::InvalidArgument("census must have m_0 = 1".into()));
        }
        if let Some(k) = (1..on_sphere.len()).find(|&k| on_sphere[k].is_odd()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "census count m_{k} is odd"
            )));
        }
        Ok(Census::from_parts(n, on_sphere, method))
    }

    pub(crate) fn from_parts(n: usize, on_sphere: Vec<BigUint>, method: Method) -> Census {
        let max_norm = on_sphere.len() as u64 - 1;
        Census {
            n,
            max_norm,
            on_sphere,
            method,
        }
    }

    /// Census of the rank-zero lattice: the identity for [`census_convolve`].
    pub fn point(max_norm: u64) -> Census {
        let mut on_sphere = alloc::vec![BigUint::zero(); max_norm as usize + 1];
        on_sphere[0] = BigUint::one();
        Census::from_parts(0, on_sphere, Method::Convolved)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn max_norm(&self) -> u64 {
        self.max_norm
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.on_sphere
    }

    /// `m_k`; panics past `max_norm`.
    pub fn on_sphere(&self, k: u64) -> &BigUint {
        &self.on_sphere[k as usize]
    }

    /// `N_k = sum_{j <= k} m_j`.
    pub fn in_ball(&self, k: u64) -> BigUint {
        self.on_sphere[..=k as usize].iter().sum()
    }

    /// Running in-ball totals for every `k`.
    pub fn in_ball_all(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.on_sphere
            .iter()
            .map(|m| {
                acc += m;
                acc.clone()
            })
            .collect()
    }

    pub fn truncated(&self, max_norm: u64) -> Result<Census> {
        if max_norm > self.max_norm {
            return Err(Error::InsufficientTruncation {
                available: self.max_norm,
                requested: max_norm,
            });
        }
        Ok(Census::from_parts(
            self.n,
            self.on_sphere[..=max_norm as usize].to_vec(),
            self.method,
        ))
    }

    /// Same rank and counts, whatever method produced them.
    pub fn same_counts(&self, other: &Census) -> bool {
        self.n == other.n && self.on_sphere == other.on_sphere
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn census_validation() {
        let c = |v: &[u32]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        assert!(Census::new(1, c(&[1, 2, 0]), Method::Dp).is_ok());
        assert!(Census::new(1, c(&[2, 2]), Method::Dp).is_err());
        assert!(Census::new(1, c(&[1, 3]), Method::Dp).is_err());
        assert!(Census::new(1, c(&[1]), Method::Dp).is_err());
        let census = Census::new(2, c(&[1, 4, 4, 0, 4]), Method::Oracle).unwrap();
        assert_eq!(census.in_ball(2), BigUint::from(9u32));
        assert_eq!(census.in_ball_all(), c(&[1, 5, 9, 9, 13]));
        assert_eq!(census.truncated(2).unwrap().counts(), &c(&[1, 4, 4])[..]);
        assert!(census.truncated(5).is_err());
        assert_eq!(
            Census::point(3).counts(),
            &vec![BigUint::one(), 0u32.into(), 0u32.into(), 0u32.into()][..]
        );
    }
}

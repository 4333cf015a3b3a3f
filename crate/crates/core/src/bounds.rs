//! Closed-form counting bounds for rank-`n` lattices and the comparison of a
//! census against them.
//!
//! The integer bounds are exact. [`minkowski_lower_bound`] and [`rm_bound`]
//! are floating-point evaluators of results that apply to other lattice
//! classes and never take part in a pass/fail verdict here, and neither does
//! [`asymptotic_leading`], whose lower-order term is unspecified.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_bigint::BigUint;
use num_traits::One;

use crate::arithmetic::binomial;
use crate::enumeration::Census;
use crate::{Error, Result};

/// `2 C(n+2k-2, 2k-1)`: most vectors of squared norm exactly `k`.
pub fn sphere_bound(n: usize, k: u64) -> BigUint {
    assert!(n >= 1 && k >= 1, "sphere_bound needs n, k >= 1");
    binomial(n as u64 + 2 * k - 2, 2 * k - 1) * 2u32
}

/// `2 C(n+2k-1, 2k-1) - 1`: most vectors of squared norm at most `k`.
pub fn ball_bound(n: usize, k: u64) -> BigUint {
    assert!(n >= 1 && k >= 1, "ball_bound needs n, k >= 1");
    binomial(n as u64 + 2 * k - 1, 2 * k - 1) * 2u32 - 1u32
}

/// Leading term `2^k (k-1)! n^k` of the fixed-`k` asymptotic bound.
/// Reference value only.
pub fn asymptotic_leading(n: usize, k: u64) -> BigUint {
    assert!(k >= 1, "asymptotic_leading needs k >= 1");
    let factorial: BigUint = (1..k).map(BigUint::from).product();
    (BigUint::one() << k) * factorial * BigUint::from(n).pow(k as u32)
}

/// `C(floor(n/2)+k-1, k)`, a lower bound on `m_k(Z^n)` for `n >= 6`.
pub fn zn_sphere_lower_bound(n: usize, k: u64) -> Result<BigUint> {
    if n < 6 {
        return Err(Error::RankTooSmall {
            rank: n,
            minimum: 6,
        });
    }
    Ok(binomial((n / 2) as u64 + k - 1, k))
}

/// `2 C(n+2a, 2a+1)`: most unit vectors in `R^n` whose pairwise absolute
/// inner products lie in a set of `a` values from `(0,1)` together with
/// `{0, 1}`.
pub fn dgs_bound(n: usize, a: u64) -> BigUint {
    binomial(n as u64 + 2 * a, 2 * a + 1) * 2u32
}

/// `2^-n vol(sqrt(k) B_2^n)`, via log-gamma.
pub fn minkowski_lower_bound(n: usize, k: f64) -> f64 {
    let half = n as f64 / 2.0;
    libm::exp(half * libm::log(PI * k) - n as f64 * LN_2 - libm::lgamma(half + 1.0))
}

/// `2 exp(tau k)` with `tau = c log^2(2n)`; `c` is caller supplied.
pub fn rm_bound(n: usize, k: f64, c: f64) -> f64 {
    let l = libm::log(2.0 * n as f64);
    2.0 * libm::exp(c * l * l * k)
}

/// Every bound at one `(n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSet {
    pub n: usize,
    pub k: u64,
    pub sphere_upper: BigUint,
    pub ball_upper: BigUint,
    pub asymptotic_leading: BigUint,
    /// `None` below rank 6.
    pub zn_sphere_lower: Option<BigUint>,
    pub dgs: BigUint,
    pub minkowski_lower: f64,
    pub rm_upper: f64,
}

impl BoundSet {
    pub fn new(n: usize, k: u64, rm_constant: f64) -> BoundSet {
        BoundSet {
            n,
            k,
            sphere_upper: sphere_bound(n, k),
            ball_upper: ball_bound(n, k),
            asymptotic_leading: asymptotic_leading(n, k),
            zn_sphere_lower: zn_sphere_lower_bound(n, k).ok(),
            dgs: dgs_bound(n, k - 1),
            minkowski_lower: minkowski_lower_bound(n, k as f64),
            rm_upper: rm_bound(n, k as f64, rm_constant),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub k: u64,
    pub on_sphere: BigUint,
    pub sphere_upper: BigUint,
    pub in_ball: BigUint,
    pub ball_upper: BigUint,
}

impl BoundRow {
    pub fn sphere_ok(&self) -> bool {
        self.on_sphere <= self.sphere_upper
    }

    pub fn ball_ok(&self) -> bool {
        self.in_ball <= self.ball_upper
    }

    pub fn pass(&self) -> bool {
        self.sphere_ok() && self.ball_ok()
    }

    /// Either count meets its bound with equality.
    pub fn tight(&self) -> bool {
        self.on_sphere == self.sphere_upper || self.in_ball == self.ball_upper
    }
}

/// Per-`k` comparison of a census with the sphere and ball bounds. Since
/// every census here comes from a validated integral lattice, a failing row
/// means a bug in the counting code, not a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub lattice: String,
    pub n: usize,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(BoundRow::pass)
    }

    /// First row whose counts break a bound.
    pub fn violation(&self) -> Option<&BoundRow> {
        self.rows.iter().find(|r| !r.pass())
    }
}

pub fn verify_census_against_bounds(lattice: &str, census: &Census) -> BoundReport {
    let n = census.rank();
    let in_ball = census.in_ball_all();
    let rows = (1..=census.max_norm())
        .map(|k| BoundRow {
            k,
            on_sphere: census.on_sphere(k).clone(),
            sphere_upper: sphere_bound(n, k),
            in_ball: in_ball[k as usize].clone(),
            ball_upper: ball_bound(n, k),
        })
        .collect();
    BoundReport {
        lattice: lattice.into(),
        n,
        rows,
    }
}

//! Gaussian mass `sum_y exp(-tau |y|^2)` with certified truncation tails.
//!
//! A [`ThetaEvaluation`] is an interval: the exact partial sum over norms up
//! to the truncation (up to rounding) plus a proven upper bound on the rest.
//! For a general lattice the rest is bounded with the sphere bound
//! `m_k <= 2 C(n+2k-2, 2k-1)`; for `Z^n` the one-dimensional series is
//! bounded directly and raised to the `n`-th power.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arithmetic::binomial;
use crate::enumeration::{count_by_norm, Census};
use crate::lattice::Lattice;
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// Relative rounding allowance folded into every interval end point.
pub const ROUNDING: f64 = 1e-13;

/// Two intervals are only ordered when they are at least this far apart.
pub const SEPARATION: f64 = 1e-10;

/// Tail terms scanned before giving up on a ratio certificate.
pub const MAX_TAIL_TERMS: u64 = 1_000_000;

/// `2 log(2n)`.
pub fn tau_star(n: usize) -> f64 {
    2.0 * libm::log(2.0 * n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEvaluation {
    pub tau: f64,
    pub truncation: u64,
    pub partial_mass: f64,
    /// `+inf` when not certified.
    pub tail_upper: f64,
    pub certified: bool,
}

impl ThetaEvaluation {
    pub fn lower(&self) -> f64 {
        self.partial_mass * (1.0 - ROUNDING)
    }

    pub fn upper(&self) -> f64 {
        self.partial_mass * (1.0 + ROUNDING) + self.tail_upper
    }
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    libm::log((x >> shift).to_f64().unwrap_or(f64::INFINITY)) + shift as f64 * LN_2
}

/// Upper bound on `sum_{k > truncation} 2 C(n+2k-2, 2k-1) exp(-tau k)`.
///
/// Consecutive terms have ratio
/// `r_k = exp(-tau) (n+2k-1)(n+2k) / (2k (2k+1))`, which is nonincreasing in
/// `k`. Once some `r_k < 1` the remaining terms are dominated by a geometric
/// series. `None` if that does not happen within [`MAX_TAIL_TERMS`].
pub fn sphere_bound_tail(n: usize, tau: f64, truncation: u64) -> Option<f64> {
    if !(tau > 0.0) {
        return None;
    }
    let n = n as f64;
    let first = truncation + 1;
    let mut term = libm::exp(
        LN_2 + ln_biguint(&binomial(n as u64 + 2 * first - 2, 2 * first - 1)) - tau * first as f64,
    );
    let decay = libm::exp(-tau);
    let mut sum = CompensatedSum::default();
    let mut k = first as f64;
    for scanned in 0..MAX_TAIL_TERMS {
        if !term.is_finite() {
            return None;
        }
        let ratio = decay * ((n + 2.0 * k - 1.0) * (n + 2.0 * k)) / ((2.0 * k) * (2.0 * k + 1.0));
        if ratio < 1.0 {
            sum.add(term / (1.0 - ratio));
            let slack = 1.0 + 1e-12 + scanned as f64 * 1e-15;
            return Some(sum.value() * slack);
        }
        sum.add(term);
        term *= ratio;
        k += 1.0;
    }
    None
}

/// Mass interval from an exact census.
pub fn mass_from_census(census: &Census, tau: f64) -> ThetaEvaluation {
    let mut sum = CompensatedSum::default();
    for (k, m) in census.counts().iter().enumerate() {
        if !m.is_zero() {
            sum.add(m.to_f64().unwrap_or(f64::INFINITY) * libm::exp(-tau * k as f64));
        }
    }
    let tail = sphere_bound_tail(census.rank().max(1), tau, census.max_norm());
    ThetaEvaluation {
        tau,
        truncation: census.max_norm(),
        partial_mass: sum.value(),
        tail_upper: tail.unwrap_or(f64::INFINITY),
        certified: tail.is_some(),
    }
}

pub fn gaussian_mass(lattice: &Lattice, tau: f64, truncation: u64) -> Result<ThetaEvaluation> {
    Ok(mass_from_census(&count_by_norm(lattice, truncation)?, tau))
}

/// Mass of `Z^n` as the `n`-th power of the one-dimensional theta sum over
/// `z^2 <= truncation`.
pub fn zn_mass(n: usize, tau: f64, truncation: u64) -> ThetaEvaluation {
    let z_max = truncation.isqrt();
    let mut theta = CompensatedSum::default();
    theta.add(1.0);
    for z in 1..=z_max {
        theta.add(2.0 * libm::exp(-tau * (z * z) as f64));
    }
    let theta = theta.value();
    // terms 2 exp(-tau z^2) for z > z_max shrink by at least exp(-tau (2 z_max + 3))
    let next = (z_max + 1) as f64;
    let one_dim_tail =
        2.0 * libm::exp(-tau * next * next) / (1.0 - libm::exp(-tau * (2.0 * next + 1.0)));
    let nf = n as f64;
    let partial = libm::exp(nf * libm::log(theta));
    let tail = partial * libm::expm1(nf * libm::log1p(one_dim_tail / theta)) * (1.0 + 1e-12);
    ThetaEvaluation {
        tau,
        truncation,
        partial_mass: partial,
        tail_upper: tail,
        certified: tail.is_finite(),
    }
}

/// `1 + (1/(2n)) ((1 - 1/(2n))^-n - (1 + 1/(2n))^-n)`: the sum over all `k`
/// of the sphere bounds weighted by `(2n)^{-2k}`, plus one.
pub fn corollary_closed_form(n: usize) -> f64 {
    let nf = n as f64;
    let x = 1.0 / (2.0 * nf);
    1.0 + x * (libm::exp(-nf * libm::log1p(-x)) - libm::exp(-nf * libm::log1p(x)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryReport {
    pub n: usize,
    pub evaluation: ThetaEvaluation,
    pub closed_form: f64,
    /// `closed_form - evaluation.upper()`.
    pub slack: f64,
    /// `n (upper - 1)`, the constant this lattice needs in `1 + C/n`.
    pub implied_constant: f64,
}

impl CorollaryReport {
    pub fn tau(&self) -> f64 {
        self.evaluation.tau
    }

    /// Upper end of the mass interval is below the closed form, up to its
    /// own evaluation error.
    pub fn pass(&self) -> bool {
        self.evaluation.certified && self.evaluation.upper() <= self.closed_form * (1.0 + 1e-12)
    }
}

pub fn verify_corollary_census(census: &Census) -> Result<CorollaryReport> {
    let n = census.rank();
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let tau = tau_star(n);
    let evaluation = mass_from_census(census, tau);
    if !evaluation.certified {
        return Err(Error::TailNotCertifiable { tau });
    }
    let closed_form = corollary_closed_form(n);
    let upper = evaluation.upper();
    Ok(CorollaryReport {
        n,
        evaluation,
        closed_form,
        slack: closed_form - upper,
        implied_constant: n as f64 * (upper - 1.0),
    })
}

/// Mass at `tau = 2 log(2n)` against [`corollary_closed_form`].
pub fn verify_corollary(lattice: &Lattice, truncation: u64) -> Result<CorollaryReport> {
    verify_corollary_census(&count_by_norm(lattice, truncation)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjectureVerdict {
    /// The lattice is `Z^n` itself (it has `2n` unit vectors).
    Equal,
    /// Certified `mass(L) < mass(Z^n)`.
    Confirmed,
    /// Certified `mass(L) > mass(Z^n)`.
    Violated,
    Indeterminate,
}

impl ConjectureVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ConjectureVerdict::Equal => "confirmed-equal",
            ConjectureVerdict::Confirmed => "confirmed",
            ConjectureVerdict::Violated => "violated",
            ConjectureVerdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureRow {
    pub tau: f64,
    pub lattice: ThetaEvaluation,
    pub zn: ThetaEvaluation,
    pub verdict: ConjectureVerdict,
}

/// Experimental comparison of `mass(L, tau)` with `mass(Z^n, tau)`. A
/// `Violated` row is an observation, not an error.
pub fn conjecture_test_census(census: &Census, taus: &[f64]) -> Vec<ConjectureRow> {
    let n = census.rank();
    // 2n unit vectors in a rank-n integral lattice form an orthonormal basis
    let is_zn = *census.on_sphere(1) == BigUint::from(2 * n);
    taus.iter()
        .map(|&tau| {
            let lattice = mass_from_census(census, tau);
            let zn = zn_mass(n, tau, census.max_norm());
            let verdict = if is_zn {
                ConjectureVerdict::Equal
            } else if lattice.certified && lattice.upper() + SEPARATION < zn.lower() {
                ConjectureVerdict::Confirmed
            } else if zn.certified && lattice.lower() > zn.upper() + SEPARATION {
                ConjectureVerdict::Violated
            } else {
                ConjectureVerdict::Indeterminate
            };
            ConjectureRow {
                tau,
                lattice,
                zn,
                verdict,
            }
        })
        .collect()
}

pub fn conjecture_test(
    lattice: &Lattice,
    taus: &[f64],
    truncation: u64,
) -> Result<Vec<ConjectureRow>> {
    Ok(conjecture_test_census(
        &count_by_norm(lattice, truncation)?,
        taus,
    ))
}

/// Exact `(1-x)^{-n} - sum_{k=0}^{terms} x^k C(n+k-1, k)` for `0 < x < 1`.
pub fn negative_binomial_remainder(n: usize, x: &BigRational, terms: u64) -> BigRational {
    let one = BigRational::one();
    let mut closed = one.clone();
    let inv = &one / (&one - x);
    for _ in 0..n {
        closed *= &inv;
    }
    let mut partial = BigRational::zero();
    let mut power = one;
    for k in 0..=terms {
        let c = BigInt::from(binomial(n as u64 + k - 1, k));
        partial += &power * BigRational::from_integer(c);
        power *= x;
    }
    closed - partial
}

//! Divisor sums, Jacobi's square-count formulas and the binomial identities
//! behind the lower bound on `Z^n` sphere counts.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::bounds::zn_sphere_lower_bound;
use crate::enumeration::census_zn_dp;
use crate::Result;

/// Exact binomial coefficient; zero when `k > n`.
///
/// Multiplicative form: after step `i` the accumulator is `C(n-k+i, i)`, so
/// every division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Odd-part character: 0 on even `m`, `+1` on `m = 1 (mod 4)`, `-1` on
/// `m = 3 (mod 4)`.
pub fn chi(m: u64) -> i64 {
    match m % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Sorted positive divisors of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    pub k: u64,
    pub divisors: Vec<u64>,
}

impl DivisorTable {
    /// Trial division up to `sqrt(k)`.
    pub fn new(k: u64) -> Self {
        assert!(k >= 1, "divisors of zero");
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d * d <= k {
            if k.is_multiple_of(d) {
                small.push(d);
                if d * d != k {
                    large.push(k / d);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        DivisorTable { k, divisors: small }
    }

    /// The list length matches `prod (e_p + 1)` over the factorization of
    /// `k` and every entry divides `k`.
    pub fn is_complete(&self) -> bool {
        let mut expected = 1usize;
        let mut rest = self.k;
        let mut p = 2u64;
        while p * p <= rest {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            expected *= e + 1;
            p += 1;
        }
        if rest > 1 {
            expected *= 2;
        }
        expected == self.divisors.len()
            && self.divisors.iter().all(|d| self.k.is_multiple_of(*d))
            && self.divisors.windows(2).all(|w| w[0] < w[1])
    }

    pub fn sigma(&self, power: u32) -> BigUint {
        self.divisors
            .iter()
            .map(|&d| BigUint::from(d).pow(power))
            .sum()
    }
}

/// Number of representations of odd `k` as a sum of four squares,
/// `8 * sigma(k)`. Even arguments are rejected.
pub fn jacobi_r4(k: u64) -> Result<BigInt> {
    if k.is_multiple_of(2) {
        return Err(crate::Error::EvenArgument(k));
    }
    Ok(BigInt::from(DivisorTable::new(k).sigma(1)) * 8)
}

/// Six-square count `4 * sum_{d|k} (k/d)^2 (4 chi(d) - chi(k/d))`.
pub fn jacobi_r6(k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for &d in &DivisorTable::new(k).divisors {
        let e = k / d;
        acc += BigInt::from(e) * e * (4 * chi(d) - chi(e));
    }
    acc * 4
}

/// Eight-square count `16 * sum_{d|k} (-1)^{d+k} d^3`.
pub fn jacobi_r8(k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for &d in &DivisorTable::new(k).divisors {
        let cube = BigInt::from(d).pow(3u32);
        if (d + k).is_multiple_of(2) {
            acc += cube;
        } else {
            acc -= cube;
        }
    }
    acc * 16
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorCheck {
    pub value: BigInt,
    pub floor: BigInt,
}

impl FloorCheck {
    pub fn holds(&self) -> bool {
        self.value >= self.floor
    }
}

/// The three square-count floors used as base cases for the `Z^n` bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFloorReport {
    pub k: u64,
    /// `r6(k) >= C(k+2, 2)`
    pub six: FloorCheck,
    /// `r8(k) >= C(k+3, 3)`
    pub eight: FloorCheck,
    /// `r4(k) >= 2k+3`, odd `k` only
    pub four: Option<FloorCheck>,
}

impl SquareFloorReport {
    pub fn pass(&self) -> bool {
        self.six.holds() && self.eight.holds() && self.four.as_ref().is_none_or(FloorCheck::holds)
    }
}

pub fn claim_a1_floors(k: u64) -> SquareFloorReport {
    let six = FloorCheck {
        value: jacobi_r6(k),
        floor: binomial(k + 2, 2).into(),
    };
    let eight = FloorCheck {
        value: jacobi_r8(k),
        floor: binomial(k + 3, 3).into(),
    };
    let four = jacobi_r4(k).ok().map(|value| FloorCheck {
        value,
        floor: BigInt::from(2 * k + 3),
    });
    SquareFloorReport {
        k,
        six,
        eight,
        four,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: u64,
    pub k: u64,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `C(m+k, m) = sum_{i=0}^{k} C(m+k-i-2, m-2) (i+1)` for `m >= 2`, both
/// sides evaluated exactly.
pub fn footnote_identity_check(m: u64, k: u64) -> Result<IdentityReport> {
    if m < 2 {
        return Err(crate::Error::InvalidArgument(alloc::format!(
            "identity needs m >= 2, got {m}"
        )));
    }
    let lhs = binomial(m + k, m);
    let rhs = (0..=k)
        .map(|i| binomial(m + k - i - 2, m - 2) * (i + 1))
        .sum();
    Ok(IdentityReport { m, k, lhs, rhs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnLowerRow {
    pub k: u64,
    pub on_sphere: BigUint,
    pub lower: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnLowerReport {
    pub n: usize,
    pub rows: Vec<ZnLowerRow>,
}

impl ZnLowerReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.on_sphere >= r.lower)
    }
}

/// Compares `m_k(Z^n)` against `C(floor(n/2)+k-1, k)` for `1 <= k <= k_max`.
pub fn zn_lower_bound_check(n: usize, k_max: u64) -> Result<ZnLowerReport> {
    let census = census_zn_dp(n, k_max);
    let rows = (1..=k_max)
        .map(|k| {
            Ok(ZnLowerRow {
                k,
                on_sphere: census.on_sphere(k).clone(),
                lower: zn_sphere_lower_bound(n, k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZnLowerReport { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigUint::one(); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal(90);
        for n in 0..=90u64 {
            for k in 0..=n + 2 {
                let expect = tri[n as usize].get(k as usize).cloned().unwrap_or_default();
                assert_eq!(binomial(n, k), expect, "C({n},{k})");
            }
        }
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(2), 0);
        assert_eq!(chi(5), 1);
        assert_eq!(chi(7), -1);
        assert_eq!(chi(1), 1);
        assert_eq!(chi(12), 0);
    }

    #[test]
    fn divisors_of_twelve() {
        let t = DivisorTable::new(12);
        assert_eq!(t.divisors, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(t.sigma(1), BigUint::from(28u32));
        assert!(t.is_complete());
        for k in 1..500 {
            assert!(DivisorTable::new(k).is_complete(), "k = {k}");
        }
    }

    #[test]
    fn jacobi_small_values() {
        assert_eq!(jacobi_r4(1).unwrap(), BigInt::from(8));
        assert_eq!(jacobi_r4(3).unwrap(), BigInt::from(32));
        assert_eq!(jacobi_r4(9).unwrap(), BigInt::from(104));
        assert_eq!(jacobi_r4(4), Err(crate::Error::EvenArgument(4)));
        assert_eq!(jacobi_r6(1), BigInt::from(12));
        assert_eq!(jacobi_r6(2), BigInt::from(60));
        assert_eq!(jacobi_r8(1), BigInt::from(16));
        assert_eq!(jacobi_r8(2), BigInt::from(112));
        assert_eq!(jacobi_r8(3), BigInt::from(448));
    }

    #[test]
    fn square_floors() {
        let r = claim_a1_floors(1);
        assert_eq!(
            (r.six.value.clone(), r.six.floor.clone()),
            (12.into(), 3.into())
        );
        assert_eq!(
            (r.eight.value.clone(), r.eight.floor.clone()),
            (16.into(), 4.into())
        );
        let four = r.four.clone().unwrap();
        assert_eq!((four.value, four.floor), (8.into(), 5.into()));
        assert!(r.pass());
        let r = claim_a1_floors(2);
        assert!(r.four.is_none());
        assert_eq!(r.six.floor, 6.into());
        assert_eq!(r.eight.floor, 10.into());
        assert!(r.pass());
        let r = claim_a1_floors(3);
        assert_eq!(r.eight.value, 448.into());
        assert_eq!(r.eight.floor, 20.into());
        assert_eq!(r.four.as_ref().unwrap().value, 32.into());
        assert_eq!(r.four.as_ref().unwrap().floor, 9.into());
        assert!(r.pass());
    }

    #[test]
    fn footnote_identity_cases() {
        let r = footnote_identity_check(2, 0).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (1u32.into(), 1u32.into()));
        let r = footnote_identity_check(2, 3).unwrap();
        assert_eq!(r.lhs, 10u32.into());
        assert!(r.pass());
        assert!(footnote_identity_check(4, 5).unwrap().pass());
        assert!(footnote_identity_check(1, 3).is_err());
    }

    #[test]
    fn zn_lower_bounds_small() {
        for (n, k) in [(6, 5), (7, 5), (12, 10)] {
            assert!(zn_lower_bound_check(n, k).unwrap().pass(), "n={n}");
        }
        assert!(zn_lower_bound_check(5, 3).is_err());
    }
}

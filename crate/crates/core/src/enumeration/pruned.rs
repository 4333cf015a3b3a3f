//! Depth-first enumeration of `x^T G x <= K` over the `L D L^T` form of the
//! Gram matrix.
//!
//! Interval radii are floating point and widened by [`margin`]; every visited
//! leaf carries its exact `i128` norm, accumulated level by level from the
//! integer Gram entries, and only that exact value decides acceptance.
//! Sign halving: the zero vector is reported once and every other vector is
//! reported with its highest-index nonzero coefficient positive.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Census, Method, DEFAULT_NODE_LIMIT};
use crate::lattice::Lattice;
use crate::linalg;
use crate::{Error, Result};

/// Decompositions above this rank run in floating point.
pub const EXACT_DECOMPOSITION_MAX_RANK: usize = 16;

/// Slack added to the norm budget before any floating comparison.
fn margin(max_norm: u64) -> f64 {
    1e-6 * (max_norm as f64 + 1.0)
}

/// Precomputed enumeration data for one lattice.
#[derive(Debug, Clone)]
pub struct Plan {
    n: usize,
    gram: Vec<i64>,
    diag: Vec<f64>,
    mu: Vec<f64>,
    exact_decomposition: bool,
}

impl Plan {
    pub fn new(lattice: &Lattice) -> Result<Plan> {
        let n = lattice.rank();
        let gram = lattice.gram().to_i64()?;
        let (diag, mu, exact_decomposition) = if n <= EXACT_DECOMPOSITION_MAX_RANK {
            let (d, m) = linalg::ldl_decomposition(lattice.gram().rows()).ok_or_else(|| {
                Error::InvalidArgument("Gram matrix lost positive definiteness".into())
            })?;
            let conv = |r: &num_rational::BigRational| r.to_f64().unwrap_or(f64::NAN);
            let diag: Vec<f64> = d.iter().map(conv).collect();
            let mu: Vec<f64> = m.iter().flatten().map(conv).collect();
            (diag, mu, true)
        } else {
            let (diag, mu) = float_ldl(n, &gram)?;
            (diag, mu, false)
        };
        if diag.iter().chain(mu.iter()).any(|v| !v.is_finite()) || diag.iter().any(|&d| d <= 0.0) {
            return Err(Error::InvalidArgument(
                "triangular decomposition is not representable in floating point".into(),
            ));
        }
        Ok(Plan {
            n,
            gram,
            diag,
            mu,
            exact_decomposition,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn exact_decomposition(&self) -> bool {
        self.exact_decomposition
    }

    /// Values the outermost (highest-index) coefficient takes, already
    /// restricted to the nonnegative half.
    pub fn top_range(&self, max_norm: u64) -> RangeInclusive<i64> {
        let top = self.n - 1;
        let budget = max_norm as f64 + margin(max_norm);
        let h = libm::sqrt(budget / self.diag[top]);
        0..=libm::floor(h) as i64
    }

    /// Visits every vector with norm `<= max_norm` once per sign pair.
    /// Returns the number of visited nodes.
    pub fn for_each<F: FnMut(&[i64], u64)>(
        &self,
        max_norm: u64,
        limit: u64,
        visit: F,
    ) -> Result<u64> {
        let mut walker = Walker::new(self, max_norm, limit, visit);
        walker.descend(self.n - 1, true)?;
        Ok(walker.nodes)
    }

    /// Like [`Plan::for_each`] restricted to one value of the outermost
    /// coefficient; the subtrees for all of [`Plan::top_range`] partition the
    /// full traversal.
    pub fn for_each_with_top<F: FnMut(&[i64], u64)>(
        &self,
        max_norm: u64,
        top: i64,
        limit: u64,
        visit: F,
    ) -> Result<u64> {
        let mut walker = Walker::new(self, max_norm, limit, visit);
        walker.step(self.n - 1, top, 0.0, 0, true)?;
        Ok(walker.nodes)
    }

    /// Halved per-norm tallies for one top coefficient, plus visited nodes.
    pub fn tally_with_top(&self, max_norm: u64, top: i64, limit: u64) -> Result<(Vec<u64>, u64)> {
        let mut tally = vec![0u64; max_norm as usize + 1];
        let nodes = self.for_each_with_top(max_norm, top, limit, |_, q| tally[q as usize] += 1)?;
        Ok((tally, nodes))
    }

    pub fn census(&self, max_norm: u64, limit: u64) -> Result<Census> {
        let mut tally = vec![0u64; max_norm as usize + 1];
        self.for_each(max_norm, limit, |_, q| tally[q as usize] += 1)?;
        Ok(census_from_tally(self.n, &tally))
    }
}

/// Turns halved tallies (zero vector counted once) into a census.
pub(crate) fn census_from_tally(n: usize, tally: &[u64]) -> Census {
    let counts = tally
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            if k == 0 {
                BigUint::from(t)
            } else {
                BigUint::from(t) * 2u32
            }
        })
        .collect();
    Census::from_parts(n, counts, Method::Pruned)
}

impl Census {
    /// Sums halved tallies from disjoint subtrees of one [`Plan`].
    pub fn from_halved_tallies<'a>(n: usize, parts: impl IntoIterator<Item = &'a [u64]>) -> Census {
        let mut total: Vec<u64> = Vec::new();
        for part in parts {
            if total.len() < part.len() {
                total.resize(part.len(), 0);
            }
            for (acc, v) in total.iter_mut().zip(part) {
                *acc += v;
            }
        }
        census_from_tally(n, &total)
    }
}

fn float_ldl(n: usize, gram: &[i64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut low = vec![0.0f64; n * n];
    let mut diag = vec![0.0f64; n];
    for i in 0..n {
        let mut di = gram[i * n + i] as f64;
        for k in 0..i {
            di -= low[i * n + k] * low[i * n + k] * diag[k];
        }
        if di <= 0.0 {
            return Err(Error::InvalidArgument(
                "floating-point decomposition broke down".into(),
            ));
        }
        diag[i] = di;
        for j in i + 1..n {
            let mut v = gram[j * n + i] as f64;
            for k in 0..i {
                v -= low[j * n + k] * low[i * n + k] * diag[k];
            }
            low[j * n + i] = v / di;
        }
    }
    let mut mu = vec![0.0f64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            mu[i * n + j] = low[j * n + i];
        }
    }
    Ok((diag, mu))
}

struct Walker<'p, F> {
    plan: &'p Plan,
    max_norm: u64,
    budget: f64,
    limit: u64,
    nodes: u64,
    x: Vec<i64>,
    partial: Vec<f64>,
    exact: Vec<i128>,
    visit: F,
}

impl<'p, F: FnMut(&[i64], u64)> Walker<'p, F> {
    fn new(plan: &'p Plan, max_norm: u64, limit: u64, visit: F) -> Self {
        let n = plan.n;
        Walker {
            plan,
            max_norm,
            budget: max_norm as f64 + margin(max_norm),
            limit,
            nodes: 0,
            x: vec![0; n],
            partial: vec![0.0; n + 1],
            exact: vec![0; n + 1],
            visit,
        }
    }

    /// Center offset and exact cross term `sum_{j > level} G[level][j] x[j]`.
    fn context(&self, level: usize) -> (f64, i128) {
        let n = self.plan.n;
        let mut c = 0.0;
        let mut s: i128 = 0;
        for j in level + 1..n {
            let xj = self.x[j];
            if xj != 0 {
                c += self.plan.mu[level * n + j] * xj as f64;
                s += self.plan.gram[level * n + j] as i128 * xj as i128;
            }
        }
        (c, s)
    }

    fn descend(&mut self, level: usize, zero_above: bool) -> Result<()> {
        let (c, s) = self.context(level);
        let rem = self.budget - self.partial[level + 1];
        if rem < 0.0 {
            return Ok(());
        }
        let h = libm::sqrt(rem / self.plan.diag[level]);
        let mut lo = libm::ceil(-c - h) as i64;
        let hi = libm::floor(-c + h) as i64;
        if zero_above {
            lo = lo.max(0);
        }
        for t in lo..=hi {
            self.step(level, t, c, s, zero_above)?;
        }
        self.x[level] = 0;
        Ok(())
    }

    fn step(&mut self, level: usize, t: i64, c: f64, s: i128, zero_above: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::ResourceLimitExceeded {
                what: "enumeration node count",
                limit: self.limit,
            });
        }
        let n = self.plan.n;
        let y = t as f64 + c;
        let p = self.partial[level + 1] + self.plan.diag[level] * y * y;
        if p > self.budget {
            return Ok(());
        }
        let g = self.plan.gram[level * n + level] as i128;
        let t128 = t as i128;
        let q = g
            .checked_mul(t128)
            .and_then(|v| v.checked_add(2 * s))
            .and_then(|v| v.checked_mul(t128))
            .and_then(|v| v.checked_add(self.exact[level + 1]))
            .ok_or(Error::EntryOverflow)?;
        self.x[level] = t;
        if level == 0 {
            if (0..=self.max_norm as i128).contains(&q) {
                (self.visit)(&self.x, q as u64);
            }
        } else {
            self.partial[level] = p;
            self.exact[level] = q;
            self.descend(level - 1, zero_above && t == 0)?;
        }
        self.x[level] = 0;
        Ok(())
    }
}

/// Exact `m_k` for `k <= max_norm` with the default node ceiling.
pub fn count_by_norm(lattice: &Lattice, max_norm: u64) -> Result<Census> {
    count_by_norm_with_limit(lattice, max_norm, DEFAULT_NODE_LIMIT)
}

pub fn count_by_norm_with_limit(lattice: &Lattice, max_norm: u64, limit: u64) -> Result<Census> {
    if max_norm == 0 {
        return Err(Error::InvalidArgument("max_norm must be at least 1".into()));
    }
    Plan::new(lattice)?.census(max_norm, limit)
}

/// The vectors of one exact norm, one representative per sign pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVectorList {
    pub norm_target: u64,
    /// Coefficient vectors in the lattice basis.
    pub vectors: Vec<Vec<i64>>,
    /// Always true: `-x` is implied for every listed `x`.
    pub sign_halved: bool,
}

impl ShortVectorList {
    /// `m_k`, counting both signs.
    pub fn full_count(&self) -> usize {
        2 * self.vectors.len()
    }

    /// Both signs of every listed vector.
    pub fn with_negatives(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.full_count());
        for v in &self.vectors {
            out.push(v.clone());
            out.push(v.iter().map(|c| -c).collect());
        }
        out
    }
}

pub fn list_vectors_with_norm(lattice: &Lattice, k: u64, limit: u64) -> Result<ShortVectorList> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "norm target must be positive".into(),
        ));
    }
    let plan = Plan::new(lattice)?;
    let mut vectors = Vec::new();
    plan.for_each(k, limit, |x, q| {
        if q == k {
            vectors.push(x.to_vec());
        }
    })?;
    Ok(ShortVectorList {
        norm_target: k,
        vectors,
        sign_halved: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_lattice, Family, GramMatrix, LatticeDescriptor};

    fn census(d: LatticeDescriptor, k: u64) -> Vec<u64> {
        count_by_norm(&make_lattice(&d).unwrap(), k)
            .unwrap()
            .counts()
            .iter()
            .map(|v| v.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn z4_unit_vectors() {
        assert_eq!(census(LatticeDescriptor::zn(4), 1), [1, 8]);
    }

    #[test]
    fn e8_and_z8_at_two() {
        assert_eq!(census(LatticeDescriptor::e8(), 2), [1, 0, 240]);
        let z8 = count_by_norm(&make_lattice(&LatticeDescriptor::zn(8)).unwrap(), 2).unwrap();
        assert_eq!(z8.on_sphere(1), &BigUint::from(16u32));
        assert_eq!(z8.on_sphere(2), &BigUint::from(112u32));
        assert_eq!(z8.in_ball(2), BigUint::from(129u32));
    }

    #[test]
    fn a2_hexagonal() {
        assert_eq!(
            census(LatticeDescriptor::family(Family::A, 2), 8),
            [1, 0, 6, 0, 0, 0, 6, 0, 6]
        );
    }

    #[test]
    fn listing() {
        let z3 = make_lattice(&LatticeDescriptor::zn(3)).unwrap();
        let l = list_vectors_with_norm(&z3, 1, DEFAULT_NODE_LIMIT).unwrap();
        let mut v = l.vectors.clone();
        v.sort();
        assert_eq!(v, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
        let e8 = make_lattice(&LatticeDescriptor::e8()).unwrap();
        let l = list_vectors_with_norm(&e8, 2, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(l.vectors.len(), 120);
        for x in &l.vectors {
            assert_eq!(e8.inner(x, x), 2.into());
        }
        let a2 = make_lattice(&LatticeDescriptor::family(Family::A, 2)).unwrap();
        assert_eq!(
            list_vectors_with_norm(&a2, 2, DEFAULT_NODE_LIMIT)
                .unwrap()
                .vectors
                .len(),
            3
        );
    }

    #[test]
    fn node_limit_is_enforced() {
        let z8 = make_lattice(&LatticeDescriptor::zn(8)).unwrap();
        assert!(matches!(
            count_by_norm_with_limit(&z8, 4, 100),
            Err(Error::ResourceLimitExceeded { limit: 100, .. })
        ));
    }

    #[test]
    fn top_split_reassembles() {
        let l = make_lattice(&LatticeDescriptor::family(Family::D, 5)).unwrap();
        let plan = Plan::new(&l).unwrap();
        let parts: Vec<Vec<u64>> = plan
            .top_range(4)
            .map(|t| plan.tally_with_top(4, t, DEFAULT_NODE_LIMIT).unwrap().0)
            .collect();
        let joined = Census::from_halved_tallies(5, parts.iter().map(Vec::as_slice));
        assert!(joined.same_counts(&count_by_norm(&l, 4).unwrap()));
    }

    #[test]
    fn floating_decomposition_above_exact_rank() {
        let l = make_lattice(&LatticeDescriptor::zn(18)).unwrap();
        let plan = Plan::new(&l).unwrap();
        assert!(!plan.exact_decomposition());
        let c = count_by_norm(&l, 2).unwrap();
        assert_eq!(c.on_sphere(1), &BigUint::from(36u32));
        assert_eq!(c.on_sphere(2), &BigUint::from(4u32 * 153));
    }

    #[test]
    fn skewed_basis_of_z2() {
        // basis (1,0), (7,1) of Z^2
        let g = GramMatrix::from_i64(&[&[1, 7], &[7, 50]]).unwrap();
        let l = Lattice::from_gram(g);
        let c: Vec<u64> = count_by_norm(&l, 4)
            .unwrap()
            .counts()
            .iter()
            .map(|v| v.to_u64().unwrap())
            .collect();
        assert_eq!(c, [1, 4, 4, 0, 4]);
    }
}

//! The norm-1 and norm-2 vectors of an integral lattice as a root system:
//! extraction, orthogonal decomposition, and the tight bound on `N_2`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};

use crate::bounds::dgs_bound;
use crate::enumeration::{list_vectors_with_norm, Plan, DEFAULT_NODE_LIMIT};
use crate::lattice::Lattice;
use crate::linalg;
use crate::{Error, Result};

/// Largest `N_2(L) - 1` over integral lattices of rank `n`.
pub fn f_of(n: usize) -> u64 {
    let n64 = n as u64;
    match n {
        7 => 126,
        8..=11 => 240 + 2 * (n64 - 8) * (n64 - 8),
        _ => 2 * n64 * n64,
    }
}

/// Largest irreducible root system of rank `n` that occurs among norm-1/2
/// lattice vectors.
pub fn g_of(n: usize) -> u64 {
    match n {
        7 => 126,
        8 => 240,
        _ => 2 * (n as u64) * (n as u64),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    A,
    B,
    D,
    E6,
    E7,
    E8,
    Unclassified,
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootLabel::A => "A",
            RootLabel::B => "B",
            RootLabel::D => "D",
            RootLabel::E6 => "E6",
            RootLabel::E7 => "E7",
            RootLabel::E8 => "E8",
            RootLabel::Unclassified => "unclassified",
        })
    }
}

/// Best-effort label from rank, size and number of norm-1 roots. Sizes above
/// `g(rank)` cannot come from an integral lattice and are an error.
pub fn classify_component(rank: usize, size: usize, norm1_count: usize) -> Result<RootLabel> {
    if size as u64 > g_of(rank) {
        return Err(Error::SizeExceedsClassification { rank, size });
    }
    Ok(match (rank, size, norm1_count) {
        (r, s, 0) if s == r * (r + 1) => RootLabel::A,
        (r, s, m) if s == 2 * r * r && m == 2 * r => RootLabel::B,
        (r, s, 0) if s == 2 * r * (r - 1) => RootLabel::D,
        (6, 72, 0) => RootLabel::E6,
        (7, 126, 0) => RootLabel::E7,
        (8, 240, 0) => RootLabel::E8,
        _ => RootLabel::Unclassified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootComponent {
    pub rank: usize,
    /// Number of roots, both signs.
    pub size: usize,
    pub norm1_count: usize,
    pub label: RootLabel,
    /// One representative per sign pair, in lattice coordinates.
    pub representatives: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemDecomposition {
    pub lattice: String,
    pub n: usize,
    pub phi_size: usize,
    /// Sorted by rank, then size, descending.
    pub components: Vec<RootComponent>,
}

impl RootSystemDecomposition {
    /// Every root, both signs.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.phi_size);
        for c in &self.components {
            for v in &c.representatives {
                out.push(v.clone());
                out.push(v.iter().map(|x| -x).collect());
            }
        }
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn gram_times(gram: &[i64], n: usize, x: &[i64]) -> Vec<i128> {
    (0..n)
        .map(|i| (0..n).map(|j| gram[i * n + j] as i128 * x[j] as i128).sum())
        .collect()
}

fn dot(x: &[i64], gy: &[i128]) -> i128 {
    x.iter().zip(gy).map(|(&a, &b)| a as i128 * b).sum()
}

pub fn extract_root_system(lattice: &Lattice) -> Result<RootSystemDecomposition> {
    extract_root_system_with_limit(lattice, DEFAULT_NODE_LIMIT)
}

/// Components are the connected pieces of the graph on sign pairs with an
/// edge wherever the exact inner product is nonzero; each component's rank
/// is the exact rank of its coefficient vectors (equal to the rank of their
/// mutual Gram matrix, `G` being positive definite).
pub fn extract_root_system_with_limit(
    lattice: &Lattice,
    limit: u64,
) -> Result<RootSystemDecomposition> {
    let n = lattice.rank();
    let gram = lattice.gram().to_i64()?;
    let mut pairs: Vec<(Vec<i64>, u64)> = Vec::new();
    Plan::new(lattice)?.for_each(2, limit, |x, q| {
        if q >= 1 {
            pairs.push((x.to_vec(), q));
        }
    })?;
    let images: Vec<Vec<i128>> = pairs.iter().map(|(x, _)| gram_times(&gram, n, x)).collect();
    let mut uf = UnionFind((0..pairs.len()).collect());
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if dot(&pairs[i].0, &images[j]) != 0 {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..pairs.len() {
        let root = uf.find(i);
        groups.entry(root).or_default().push(i);
    }
    let mut components: Vec<RootComponent> = groups
        .into_values()
        .map(|members| {
            let rows: Vec<Vec<BigInt>> = members
                .iter()
                .map(|&i| pairs[i].0.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let rank = linalg::rank(&rows);
            let size = 2 * members.len();
            let norm1_count = 2 * members.iter().filter(|&&i| pairs[i].1 == 1).count();
            RootComponent {
                rank,
                size,
                norm1_count,
                label: classify_component(rank, size, norm1_count)
                    .unwrap_or(RootLabel::Unclassified),
                representatives: members.iter().map(|&i| pairs[i].0.clone()).collect(),
            }
        })
        .collect();
    components.sort_by(|a, b| {
        (b.rank, b.size, b.norm1_count, &a.representatives).cmp(&(
            a.rank,
            a.size,
            a.norm1_count,
            &b.representatives,
        ))
    });
    Ok(RootSystemDecomposition {
        lattice: lattice.id(),
        n,
        phi_size: 2 * pairs.len(),
        components,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootAxiomReport {
    pub checked_pairs: usize,
    /// `2<a,b>/|b|^2` not an integer.
    pub non_integral: usize,
    /// Reflection of `a` in `b` missing from the set.
    pub not_closed: usize,
}

impl RootAxiomReport {
    pub fn pass(&self) -> bool {
        self.non_integral == 0 && self.not_closed == 0
    }
}

/// Checks closure under reflections and integrality of Cartan ratios on the
/// full extracted set.
pub fn check_root_axioms(
    lattice: &Lattice,
    system: &RootSystemDecomposition,
) -> Result<RootAxiomReport> {
    let n = lattice.rank();
    let gram = lattice.gram().to_i64()?;
    let roots = system.roots();
    let set: BTreeSet<&[i64]> = roots.iter().map(Vec::as_slice).collect();
    let images: Vec<Vec<i128>> = roots.iter().map(|y| gram_times(&gram, n, y)).collect();
    let mut report = RootAxiomReport {
        checked_pairs: 0,
        non_integral: 0,
        not_closed: 0,
    };
    let mut reflected = vec![0i64; n];
    for a in &roots {
        for (b, gb) in roots.iter().zip(&images) {
            report.checked_pairs += 1;
            let norm_b = dot(b, gb);
            let twice = 2 * dot(a, gb);
            if twice % norm_b != 0 {
                report.non_integral += 1;
                continue;
            }
            let c = (twice / norm_b) as i64;
            for i in 0..n {
                reflected[i] = a[i] - c * b[i];
            }
            if !set.contains(reflected.as_slice()) {
                report.not_closed += 1;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K2Report {
    pub lattice: String,
    pub n: usize,
    /// `N_2 = 1 + |Phi|`.
    pub n2: u64,
    /// `f(n) + 1`.
    pub bound: u64,
    /// `(rank, size, g(rank))` per component.
    pub components: Vec<(usize, usize, u64)>,
    pub rank_sum: usize,
    pub g_sum: u64,
}

impl K2Report {
    pub fn components_ok(&self) -> bool {
        self.components.iter().all(|&(_, size, g)| size as u64 <= g)
    }

    pub fn pass(&self) -> bool {
        self.n2 <= self.bound
            && self.components_ok()
            && self.rank_sum <= self.n
            && self.g_sum <= f_of(self.n)
    }

    pub fn tight(&self) -> bool {
        self.n2 == self.bound
    }
}

pub fn k2_report(system: &RootSystemDecomposition) -> K2Report {
    K2Report {
        lattice: system.lattice.clone(),
        n: system.n,
        n2: 1 + system.phi_size as u64,
        bound: f_of(system.n) + 1,
        components: system
            .components
            .iter()
            .map(|c| (c.rank, c.size, g_of(c.rank)))
            .collect(),
        rank_sum: system.components.iter().map(|c| c.rank).sum(),
        g_sum: system.components.iter().map(|c| g_of(c.rank)).sum(),
    }
}

pub fn verify_k2_theorem(lattice: &Lattice) -> Result<K2Report> {
    Ok(k2_report(&extract_root_system(lattice)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgsReport {
    pub lattice: String,
    pub n: usize,
    pub k: u64,
    pub on_sphere: u64,
    pub bound: BigUint,
    /// Inner products over unordered pairs of distinct listed vectors (one
    /// per sign pair).
    pub distribution: BTreeMap<i64, u64>,
}

impl DgsReport {
    /// All values in `{-k, ..., k}`.
    pub fn in_range(&self) -> bool {
        let k = self.k as i64;
        self.distribution.keys().all(|v| (-k..=k).contains(v))
    }

    /// Distinct lines never reach `|<y_i, y_j>| = k`.
    pub fn lines_distinct(&self) -> bool {
        let k = self.k as i64;
        self.distribution.keys().all(|v| v.abs() < k)
    }

    pub fn pass(&self) -> bool {
        self.in_range() && self.lines_distinct() && BigUint::from(self.on_sphere) <= self.bound
    }
}

/// Scans all pairs of norm-`k` vectors and compares `m_k` with the few-angle
/// bound for `k - 1` admissible nonzero angles.
pub fn dgs_membership_check(lattice: &Lattice, k: u64, limit: u64) -> Result<DgsReport> {
    let n = lattice.rank();
    let gram = lattice.gram().to_i64()?;
    let list = list_vectors_with_norm(lattice, k, limit)?;
    let images: Vec<Vec<i128>> = list
        .vectors
        .iter()
        .map(|y| gram_times(&gram, n, y))
        .collect();
    let mut distribution = BTreeMap::new();
    for i in 0..list.vectors.len() {
        for gj in &images[i + 1..] {
            let v = dot(&list.vectors[i], gj);
            let v = i64::try_from(v).map_err(|_| Error::EntryOverflow)?;
            *distribution.entry(v).or_insert(0u64) += 1;
        }
    }
    Ok(DgsReport {
        lattice: lattice.id(),
        n,
        k,
        on_sphere: list.full_count() as u64,
        bound: dgs_bound(n, k - 1),
        distribution,
    })
}

//! Integral lattices presented by exact integer Gram matrices.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::linalg;
use crate::{Error, Result};

/// Named lattice families with standard root-basis Gram matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Z,
    A,
    D,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Z => "Zn",
            Family::A => "An",
            Family::D => "Dn",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Some(match tag {
            "Zn" => Family::Z,
            "An" => Family::A,
            "Dn" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            _ => return None,
        })
    }

    /// The only rank of the exceptional families.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::Z | Family::A => 1,
            Family::D => 2,
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
        }
    }
}

/// Cartan matrix of E8 in Bourbaki order; E7 and E6 are its leading blocks.
const E8_CARTAN: [[i8; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

fn family_rows(family: Family, rank: usize) -> Result<Vec<Vec<BigInt>>> {
    let unsupported = || Error::UnsupportedFamilyRank {
        family: family.tag(),
        rank,
    };
    if rank < family.min_rank() || family.fixed_rank().is_some_and(|r| r != rank) {
        return Err(unsupported());
    }
    let mut g = vec![vec![0i64; rank]; rank];
    match family {
        Family::Z => (0..rank).for_each(|i| g[i][i] = 1),
        Family::A => {
            for i in 0..rank {
                g[i][i] = 2;
                if i + 1 < rank {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
            }
        }
        Family::D => {
            // chain 0..=rank-2, node rank-1 hangs off rank-3
            for i in 0..rank {
                g[i][i] = 2;
            }
            for i in 0..rank.saturating_sub(2) {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
            if rank >= 3 {
                g[rank - 3][rank - 1] = -1;
                g[rank - 1][rank - 3] = -1;
            }
        }
        Family::E6 | Family::E7 | Family::E8 => {
            for i in 0..rank {
                for j in 0..rank {
                    g[i][j] = E8_CARTAN[i][j].into();
                }
            }
        }
    }
    Ok(g.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect())
}

/// One reason a square integer array fails to be an integral-lattice Gram
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NotSquare {
        row: usize,
        len: usize,
    },
    Asymmetric {
        row: usize,
        col: usize,
    },
    DiagonalBelowOne {
        index: usize,
    },
    /// `index` is the 1-based size of the failing leading minor.
    NonPositiveMinor {
        index: usize,
        value: BigInt,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every way `rows` fails to be a symmetric positive definite integer
/// matrix with diagonal at least one. Nothing is thrown.
pub fn check_integral(rows: &[Vec<BigInt>]) -> ValidationReport {
    let mut violations = Vec::new();
    let n = rows.len();
    if n == 0 {
        violations.push(Violation::Empty);
        return ValidationReport { violations };
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            violations.push(Violation::NotSquare { row, len: r.len() });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for i in 0..n {
        for j in i + 1..n {
            if rows[i][j] != rows[j][i] {
                violations.push(Violation::Asymmetric { row: i, col: j });
            }
        }
    }
    for i in 0..n {
        if rows[i][i] < BigInt::one() {
            violations.push(Violation::DiagonalBelowOne { index: i });
        }
    }
    for (k, minor) in linalg::leading_minors(rows).into_iter().enumerate() {
        if !minor.is_positive() {
            violations.push(Violation::NonPositiveMinor {
                index: k + 1,
                value: minor,
            });
        }
    }
    ValidationReport { violations }
}

/// A validated integral-lattice Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let report = check_integral(&rows);
        // a diagonal entry below one on a symmetric matrix always comes with a
        // failing leading minor, which is the more useful error
        let first = report
            .violations
            .into_iter()
            .find(|v| !matches!(v, Violation::DiagonalBelowOne { .. }));
        if let Some(v) = first {
            return Err(match v {
                Violation::Empty => Error::MalformedGram("no rows".into()),
                Violation::NotSquare { row, len } => {
                    Error::MalformedGram(format!("row {row} has {len} entries"))
                }
                Violation::Asymmetric { row, col } => Error::NonIntegralGram { row, col },
                Violation::NonPositiveMinor { index, value } => Error::NotPositiveDefinite {
                    minor: index,
                    value,
                },
                Violation::DiagonalBelowOne { .. } => unreachable!(),
            });
        }
        Ok(GramMatrix { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    /// Row-major copy in `i64`, for the machine-integer enumerators.
    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.rows
            .iter()
            .flatten()
            .map(|v| v.to_i64().ok_or(Error::EntryOverflow))
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.rows)
    }

    fn block_diagonal(a: &GramMatrix, b: &GramMatrix) -> GramMatrix {
        let (na, nb) = (a.rank(), b.rank());
        let mut rows = vec![vec![BigInt::zero(); na + nb]; na + nb];
        for i in 0..na {
            rows[i][..na].clone_from_slice(&a.rows[i]);
        }
        for i in 0..nb {
            rows[na + i][na..].clone_from_slice(&b.rows[i]);
        }
        GramMatrix { rows }
    }

    fn scaled(&self, factor: &BigInt) -> GramMatrix {
        GramMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v * factor).collect())
                .collect(),
        }
    }
}

/// Exact determinant of a validated Gram matrix.
pub fn gram_determinant(gram: &GramMatrix) -> BigInt {
    gram.determinant()
}

/// How a lattice was put together.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LatticeDescriptor {
    Family {
        family: Family,
        rank: usize,
    },
    Explicit(Vec<Vec<BigInt>>),
    DirectSum(Vec<LatticeDescriptor>),
    Scaled {
        inner: Box<LatticeDescriptor>,
        factor: BigInt,
    },
}

impl LatticeDescriptor {
    pub fn family(family: Family, rank: usize) -> Self {
        LatticeDescriptor::Family { family, rank }
    }

    pub fn zn(rank: usize) -> Self {
        Self::family(Family::Z, rank)
    }

    pub fn e8() -> Self {
        Self::family(Family::E8, 8)
    }

    pub fn direct_sum(parts: impl IntoIterator<Item = LatticeDescriptor>) -> Self {
        LatticeDescriptor::DirectSum(parts.into_iter().collect())
    }

    pub fn scaled(inner: LatticeDescriptor, factor: u64) -> Self {
        LatticeDescriptor::Scaled {
            inner: Box::new(inner),
            factor: BigInt::from(factor),
        }
    }

    /// `Some(n)` when the descriptor is literally the standard lattice
    /// `Z^n`, possibly written as a direct sum of `Z^m` pieces.
    pub fn as_zn_rank(&self) -> Option<usize> {
        match self {
            LatticeDescriptor::Family {
                family: Family::Z,
                rank,
            } => Some(*rank),
            LatticeDescriptor::DirectSum(parts) if !parts.is_empty() => {
                parts.iter().map(|p| p.as_zn_rank()).sum()
            }
            _ => None,
        }
    }
}

impl fmt::Display for LatticeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeDescriptor::Family { family, rank } => match family {
                Family::Z => write!(f, "Z{rank}"),
                Family::A => write!(f, "A{rank}"),
                Family::D => write!(f, "D{rank}"),
                Family::E6 | Family::E7 | Family::E8 => f.write_str(family.tag()),
            },
            LatticeDescriptor::Explicit(rows) => write!(f, "gram{}", rows.len()),
            LatticeDescriptor::DirectSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    if matches!(p, LatticeDescriptor::DirectSum(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            LatticeDescriptor::Scaled { inner, factor } => write!(f, "{factor}*({inner})"),
        }
    }
}

/// A validated integral lattice with its cached Gram determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: GramMatrix,
    descriptor: LatticeDescriptor,
    det_gram: BigInt,
}

impl Lattice {
    pub fn from_gram(gram: GramMatrix) -> Lattice {
        let det_gram = gram.determinant();
        let descriptor = LatticeDescriptor::Explicit(gram.rows.clone());
        Lattice {
            gram,
            descriptor,
            det_gram,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn descriptor(&self) -> &LatticeDescriptor {
        &self.descriptor
    }

    pub fn det_gram(&self) -> &BigInt {
        &self.det_gram
    }

    /// Short human-readable name derived from the descriptor.
    pub fn id(&self) -> String {
        format!("{}", self.descriptor)
    }

    /// Exact inner product `x^T G y` of two coefficient vectors.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    row += &self.gram.rows[i][j] * yj;
                }
            }
            acc += row * xi;
        }
        acc
    }

    pub fn scaled(&self, factor: u64) -> Result<Lattice> {
        if factor == 0 {
            return Err(Error::InvalidScale);
        }
        let c = BigInt::from(factor);
        Ok(Lattice {
            gram: self.gram.scaled(&c),
            det_gram: &self.det_gram * Pow::pow(&c, self.rank()),
            descriptor: LatticeDescriptor::Scaled {
                inner: Box::new(self.descriptor.clone()),
                factor: c,
            },
        })
    }
}

/// Orthogonal direct sum; the Gram matrix is block diagonal.
pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let mut parts = Vec::new();
    for d in [&a.descriptor, &b.descriptor] {
        match d {
            LatticeDescriptor::DirectSum(inner) => parts.extend(inner.iter().cloned()),
            other => parts.push(other.clone()),
        }
    }
    Lattice {
        gram: GramMatrix::block_diagonal(&a.gram, &b.gram),
        descriptor: LatticeDescriptor::DirectSum(parts),
        det_gram: &a.det_gram * &b.det_gram,
    }
}

/// Builds and validates the lattice a descriptor names.
pub fn make_lattice(descriptor: &LatticeDescriptor) -> Result<Lattice> {
    let mut lattice = match descriptor {
        LatticeDescriptor::Family { family, rank } => {
            let gram = GramMatrix::new(family_rows(*family, *rank)?)?;
            Lattice::from_gram(gram)
        }
        LatticeDescriptor::Explicit(rows) => Lattice::from_gram(GramMatrix::new(rows.clone())?),
        LatticeDescriptor::DirectSum(parts) => {
            let mut iter = parts.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::MalformedGram("empty direct sum".into()))?;
            let mut acc = make_lattice(first)?;
            for p in iter {
                acc = direct_sum(&acc, &make_lattice(p)?);
            }
            acc
        }
        LatticeDescriptor::Scaled { inner, factor } => {
            let factor = factor
                .to_u64()
                .filter(|&c| c > 0)
                .ok_or(Error::InvalidScale)?;
            make_lattice(inner)?.scaled(factor)?
        }
    };
    lattice.descriptor = descriptor.clone();
    Ok(lattice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn lat(d: LatticeDescriptor) -> Lattice {
        make_lattice(&d).unwrap()
    }

    #[test]
    fn zn_is_identity() {
        let z3 = lat(LatticeDescriptor::zn(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*z3.gram().entry(i, j), big((i == j) as i64));
            }
        }
        assert_eq!(*z3.det_gram(), big(1));
    }

    #[test]
    fn family_determinants() {
        // det A_n = n + 1, det D_n = 4, E6/E7/E8 = 3/2/1
        for n in 1..=12 {
            assert_eq!(
                *lat(LatticeDescriptor::family(Family::A, n)).det_gram(),
                big(n as i64 + 1)
            );
        }
        for n in 2..=12 {
            assert_eq!(
                *lat(LatticeDescriptor::family(Family::D, n)).det_gram(),
                big(4)
            );
        }
        assert_eq!(
            *lat(LatticeDescriptor::family(Family::E6, 6)).det_gram(),
            big(3)
        );
        assert_eq!(
            *lat(LatticeDescriptor::family(Family::E7, 7)).det_gram(),
            big(2)
        );
        assert_eq!(*lat(LatticeDescriptor::e8()).det_gram(), big(1));
    }

    #[test]
    fn unsupported_ranks() {
        for (family, rank) in [
            (Family::D, 1),
            (Family::A, 0),
            (Family::E8, 9),
            (Family::E6, 5),
        ] {
            assert!(matches!(
                make_lattice(&LatticeDescriptor::family(family, rank)),
                Err(Error::UnsupportedFamilyRank { .. })
            ));
        }
    }

    #[test]
    fn e8_plus_z1() {
        let d = LatticeDescriptor::direct_sum([LatticeDescriptor::e8(), LatticeDescriptor::zn(1)]);
        let l = lat(d);
        assert_eq!(l.rank(), 9);
        assert_eq!(*l.det_gram(), big(1));
        assert_eq!(l.gram().determinant(), big(1));
        assert_eq!(*l.gram().entry(8, 8), big(1));
        assert_eq!(*l.gram().entry(7, 8), big(0));
        assert_eq!(l.id(), "E8+Z1");
    }

    #[test]
    fn scaled_z2() {
        let l = lat(LatticeDescriptor::scaled(LatticeDescriptor::zn(2), 3));
        assert_eq!(*l.gram().entry(0, 0), big(3));
        assert_eq!(*l.gram().entry(0, 1), big(0));
        assert_eq!(*l.det_gram(), big(9));
        assert!(matches!(
            make_lattice(&LatticeDescriptor::scaled(LatticeDescriptor::zn(2), 0)),
            Err(Error::InvalidScale)
        ));
    }

    #[test]
    fn direct_sum_determinants() {
        let a2 = lat(LatticeDescriptor::family(Family::A, 2));
        assert_eq!(*direct_sum(&a2, &a2).det_gram(), big(9));
        let z5 = direct_sum(
            &lat(LatticeDescriptor::zn(2)),
            &lat(LatticeDescriptor::zn(3)),
        );
        assert_eq!(z5.gram(), lat(LatticeDescriptor::zn(5)).gram());
    }

    #[test]
    fn check_integral_reports() {
        let ok = |rows: &[&[i64]]| {
            check_integral(
                &rows
                    .iter()
                    .map(|r| r.iter().map(|&v| big(v)).collect())
                    .collect::<Vec<_>>(),
            )
        };
        assert!(ok(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]).is_valid());
        assert!(ok(&[&[2, 1], &[1, 2]]).is_valid());
        assert_eq!(
            ok(&[&[1, 2], &[2, 1]]).violations,
            vec![Violation::NonPositiveMinor {
                index: 2,
                value: big(-3)
            }]
        );
        let r = ok(&[&[1, 2], &[3, 1]]);
        assert!(r
            .violations
            .contains(&Violation::Asymmetric { row: 0, col: 1 }));
        let r = ok(&[&[0, 0], &[0, 1]]);
        assert!(r
            .violations
            .contains(&Violation::DiagonalBelowOne { index: 0 }));
        assert!(r.violations.contains(&Violation::NonPositiveMinor {
            index: 1,
            value: big(0)
        }));
        assert_eq!(
            ok(&[&[1, 0], &[0]]).violations,
            vec![Violation::NotSquare { row: 1, len: 1 }]
        );
    }

    #[test]
    fn gram_new_errors() {
        assert!(matches!(
            GramMatrix::from_i64(&[&[1, 2], &[3, 1]]),
            Err(Error::NonIntegralGram { row: 0, col: 1 })
        ));
        assert!(matches!(
            GramMatrix::from_i64(&[&[1, 2], &[2, 1]]),
            Err(Error::NotPositiveDefinite { minor: 2, .. })
        ));
    }

    #[test]
    fn zn_detection() {
        assert_eq!(LatticeDescriptor::zn(4).as_zn_rank(), Some(4));
        let d = LatticeDescriptor::direct_sum([LatticeDescriptor::zn(2), LatticeDescriptor::zn(3)]);
        assert_eq!(d.as_zn_rank(), Some(5));
        let d = LatticeDescriptor::direct_sum([LatticeDescriptor::zn(2), LatticeDescriptor::e8()]);
        assert_eq!(d.as_zn_rank(), None);
    }
}

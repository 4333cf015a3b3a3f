//! The shipped descriptor corpus.

use std::path::Path;

use intlat_core::{Family, LatticeDescriptor};

use crate::descriptor::{load_descriptor, DescriptorError};

/// Every family member up to `max_rank`.
pub fn families(max_rank: usize) -> Vec<LatticeDescriptor> {
    let mut out = Vec::new();
    for family in [Family::Z, Family::A, Family::D] {
        for n in family.min_rank()..=max_rank {
            out.push(LatticeDescriptor::family(family, n));
        }
    }
    for family in [Family::E6, Family::E7, Family::E8] {
        let n = family.fixed_rank().expect("exceptional rank");
        if n <= max_rank {
            out.push(LatticeDescriptor::family(family, n));
        }
    }
    out
}

/// Direct sums and rescalings that exercise the composite descriptors.
pub fn composites() -> Vec<LatticeDescriptor> {
    use LatticeDescriptor as D;
    let f = D::family;
    let mut out: Vec<D> = (1..=4)
        .map(|m| D::direct_sum([D::e8(), D::zn(m)]))
        .collect();
    out.extend([
        D::direct_sum([f(Family::E7, 7), D::zn(1)]),
        D::direct_sum([f(Family::E6, 6), D::zn(2)]),
        D::direct_sum([f(Family::A, 2), f(Family::A, 2)]),
        D::direct_sum([f(Family::D, 4), D::zn(2)]),
        D::direct_sum([f(Family::D, 4), f(Family::D, 4)]),
        D::direct_sum([f(Family::A, 3), f(Family::E6, 6)]),
        D::scaled(D::zn(3), 2),
        D::scaled(f(Family::A, 2), 3),
        D::direct_sum([D::scaled(D::e8(), 2), D::zn(2)]),
    ]);
    out
}

/// Families up to rank 12 followed by [`composites`].
pub fn standard() -> Vec<LatticeDescriptor> {
    let mut out = families(12);
    out.extend(composites());
    out
}

/// File stem used for a descriptor in the corpus directory.
pub fn file_stem(d: &LatticeDescriptor) -> String {
    d.to_string()
        .chars()
        .filter_map(|c| match c {
            '+' => Some('_'),
            '*' => Some('x'),
            '(' | ')' => None,
            c => Some(c.to_ascii_lowercase()),
        })
        .collect()
}

/// All `*.json` descriptors in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, LatticeDescriptor)>, DescriptorError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| DescriptorError::Io(format!("{}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| DescriptorError::Io(e.to_string()))?
            .path();
        if path.extension().is_some_and(|x| x == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            Ok((name, load_descriptor(&p)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn stems_are_unique() {
        let stems: HashSet<String> = standard().iter().map(file_stem).collect();
        assert_eq!(stems.len(), standard().len());
        assert_eq!(file_stem(&LatticeDescriptor::e8()), "e8");
    }

    #[test]
    fn every_member_is_valid() {
        for d in standard() {
            intlat_core::lattice::make_lattice(&d).unwrap_or_else(|e| panic!("{d}: {e}"));
        }
    }
}

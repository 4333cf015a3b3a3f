use intlat_core::enumeration::Plan;
use intlat_core::{Census, Error, Lattice};
use rayon::prelude::*;

/// Pruned census with the subtrees of the outermost coefficient counted in
/// parallel. Tallies are merged in coefficient order, so the result does not
/// depend on scheduling.
pub fn count_by_norm_parallel(
    lattice: &Lattice,
    max_norm: u64,
    limit: u64,
) -> Result<Census, Error> {
    if max_norm == 0 {
        return Err(Error::InvalidArgument("max_norm must be at least 1".into()));
    }
    let plan = Plan::new(lattice)?;
    let tops: Vec<i64> = plan.top_range(max_norm).collect();
    let parts = tops
        .par_iter()
        .map(|&t| plan.tally_with_top(max_norm, t, limit))
        .collect::<Result<Vec<_>, _>>()?;
    let nodes: u64 = parts.iter().map(|(_, n)| n).sum();
    if nodes > limit {
        return Err(Error::ResourceLimitExceeded {
            what: "enumeration node count",
            limit,
        });
    }
    Ok(Census::from_halved_tallies(
        lattice.rank(),
        parts.iter().map(|(t, _)| t.as_slice()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use intlat_core::enumeration::count_by_norm;
    use intlat_core::lattice::{make_lattice, Family};
    use intlat_core::{LatticeDescriptor, DEFAULT_NODE_LIMIT};

    #[test]
    fn matches_sequential() {
        for d in [
            LatticeDescriptor::e8(),
            LatticeDescriptor::family(Family::D, 6),
            LatticeDescriptor::zn(1),
        ] {
            let l = make_lattice(&d).unwrap();
            let par = count_by_norm_parallel(&l, 4, DEFAULT_NODE_LIMIT).unwrap();
            let seq = count_by_norm(&l, 4).unwrap();
            assert_eq!(par, seq);
        }
    }

    #[test]
    fn limit_applies_to_the_total() {
        let l = make_lattice(&LatticeDescriptor::zn(6)).unwrap();
        assert!(matches!(
            count_by_norm_parallel(&l, 4, 50),
            Err(Error::ResourceLimitExceeded { .. })
        ));
    }
}

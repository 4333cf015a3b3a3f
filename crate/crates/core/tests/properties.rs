use intlat_core::arithmetic::{binomial, footnote_identity_check};
use intlat_core::bounds::{ball_bound, dgs_bound, sphere_bound};
use intlat_core::enumeration::{census_convolve, census_oracle, census_zn_dp, count_by_norm};
use intlat_core::lattice::{direct_sum, make_lattice, Family};
use intlat_core::roots::{f_of, g_of};
use intlat_core::theta::mass_from_census;
use intlat_core::{GramMatrix, Lattice, LatticeDescriptor};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

/// `B^T B` for a random nonsingular integer `B`.
fn random_gram() -> impl Strategy<Value = Lattice> {
    (1usize..=4)
        .prop_flat_map(|n| proptest::collection::vec(-2i64..=2, n * n).prop_map(move |b| (n, b)))
        .prop_filter_map("singular basis", |(n, b)| {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            BigInt::from((0..n).map(|r| b[r * n + i] * b[r * n + j]).sum::<i64>())
                        })
                        .collect()
                })
                .collect();
            GramMatrix::new(rows).ok().map(Lattice::from_gram)
        })
}

fn family() -> impl Strategy<Value = LatticeDescriptor> {
    prop_oneof![
        (1usize..=4).prop_map(LatticeDescriptor::zn),
        (1usize..=4).prop_map(|n| LatticeDescriptor::family(Family::A, n)),
        (2usize..=4).prop_map(|n| LatticeDescriptor::family(Family::D, n)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pruned_matches_oracle(l in random_gram(), k in 1u64..=4) {
        let pruned = count_by_norm(&l, k).unwrap();
        let oracle = census_oracle(&l, k).unwrap();
        prop_assert!(pruned.same_counts(&oracle));
        prop_assert!(pruned.counts()[1..].iter().all(|m| (m % 2u32).is_zero()));
    }

    #[test]
    fn direct_sum_law(a in family(), b in family(), k in 1u64..=4) {
        let (a, b) = (make_lattice(&a).unwrap(), make_lattice(&b).unwrap());
        let sum = direct_sum(&a, &b);
        prop_assert_eq!(sum.det_gram(), &(a.det_gram() * b.det_gram()));
        let conv = census_convolve(&count_by_norm(&a, k).unwrap(), &count_by_norm(&b, k).unwrap(), k).unwrap();
        prop_assert!(count_by_norm(&sum, k).unwrap().same_counts(&conv));
    }

    #[test]
    fn scaling_multiplies_determinant(d in family(), c in 1u64..=5) {
        let l = make_lattice(&LatticeDescriptor::scaled(d.clone(), c)).unwrap();
        let base = make_lattice(&d).unwrap();
        prop_assert_eq!(l.gram().determinant(), base.det_gram() * Pow::pow(&BigInt::from(c), base.rank()));
        prop_assert_eq!(l.det_gram(), &l.gram().determinant());
    }

    #[test]
    fn mass_is_monotone(d in family(), t1 in 0.2f64..4.0, t2 in 0.2f64..4.0) {
        let census = count_by_norm(&make_lattice(&d).unwrap(), 6).unwrap();
        let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(mass_from_census(&census, hi).partial_mass <= mass_from_census(&census, lo).partial_mass);
        let shorter = census.truncated(3).unwrap();
        prop_assert!(mass_from_census(&shorter, lo).partial_mass <= mass_from_census(&census, lo).partial_mass);
    }
}

#[test]
fn telescoping_identity() {
    for n in 1..=64u64 {
        for k in 1..=64u64 {
            let total: BigUint =
                (1..2 * k).map(|i| binomial(n + i - 1, i)).sum::<BigUint>() * 2u32 + 1u32;
            assert_eq!(total, ball_bound(n as usize, k), "n={n} k={k}");
            let spheres: BigUint = (1..=k)
                .map(|j| sphere_bound(n as usize, j))
                .sum::<BigUint>()
                + 1u32;
            assert!(spheres <= total);
        }
    }
}

#[test]
fn sphere_bound_is_dgs_with_k_minus_one_angles() {
    for n in 1..=64 {
        for k in 1..=64 {
            assert_eq!(sphere_bound(n, k), dgs_bound(n, k - 1));
            assert!(sphere_bound(n, k) <= ball_bound(n, k));
        }
    }
}

#[test]
fn bounds_strictly_increase() {
    for n in 1..40 {
        for k in 1..40 {
            assert!(sphere_bound(n + 1, k) > sphere_bound(n, k));
            if n == 1 {
                // 2 C(2k-1, 2k-1) = 2 for every k
                assert_eq!(sphere_bound(1, k + 1), sphere_bound(1, k));
            } else {
                assert!(sphere_bound(n, k + 1) > sphere_bound(n, k));
            }
            assert!(ball_bound(n + 1, k) > ball_bound(n, k));
            assert!(ball_bound(n, k + 1) > ball_bound(n, k));
        }
    }
}

#[test]
fn f_dominates_g_and_is_superadditive() {
    for n in 1..=64 {
        assert!(f_of(n) >= g_of(n));
    }
    for a in 1..=32 {
        for b in 1..=32 {
            assert!(f_of(a + b) >= f_of(a) + f_of(b), "{a} + {b}");
        }
    }
}

#[test]
fn footnote_identity_grid() {
    for m in 2..=10 {
        for k in 0..=20 {
            assert!(footnote_identity_check(m, k).unwrap().pass());
        }
    }
}

#[test]
fn dp_equals_pruned_on_zn() {
    for n in 1..=7 {
        let z = make_lattice(&LatticeDescriptor::zn(n)).unwrap();
        assert!(count_by_norm(&z, 6)
            .unwrap()
            .same_counts(&census_zn_dp(n, 6)));
        assert_eq!(census_zn_dp(n, 6).on_sphere(0), &BigUint::one());
    }
}

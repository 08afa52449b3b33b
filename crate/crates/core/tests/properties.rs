//! Cross-module property suites: closure soundness, double counting,
//! certified checks on random closures, and enumeration completeness against
//! independently computed labeled counts.

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use ucf_core::bounds::{check_density_lower, check_reimer, Verdict};
use ucf_core::family::{normalize, union_closure, SetFamily};
use ucf_core::rational::ratio_u64;
use ucf_core::search::{enumerate_ucf, sample_random_ucf};
use ucf_core::witness::{check_frankl, equal_pair_direct, lemma2_witness};

fn arb_raw_sets() -> impl Strategy<Value = Vec<BTreeSet<u64>>> {
    prop::collection::vec(prop::collection::btree_set(0u64..12, 0..6), 1..8)
}

fn arb_family() -> impl Strategy<Value = SetFamily> {
    (1usize..=8).prop_flat_map(|n| {
        let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        prop::collection::btree_set(0..=full, 1..10).prop_map(move |mut masks| {
            masks.insert(full); // ensure the universe is covered
            SetFamily::from_masks(n, masks).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn normalize_produces_dense_full_universe(sets in arb_raw_sets()) {
        let distinct_masks: HashSet<_> = sets.iter().collect();
        prop_assume!(distinct_masks.len() == sets.len());
        let labels: BTreeSet<u64> = sets.iter().flatten().copied().collect();
        prop_assume!(!labels.is_empty());

        let nf = normalize(&sets).unwrap();
        prop_assert_eq!(nf.family.n(), labels.len());
        prop_assert_eq!(&nf.labels, &labels.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(nf.family.len(), sets.len());
        // order-preserving relabeling keeps cardinalities
        let mut in_sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
        let mut out_sizes: Vec<usize> =
            nf.family.members().iter().map(|m| m.count_ones() as usize).collect();
        in_sizes.sort_unstable();
        out_sizes.sort_unstable();
        prop_assert_eq!(in_sizes, out_sizes);
    }

    #[test]
    fn closure_soundness(f in arb_family()) {
        let closed = union_closure(&f);
        prop_assert!(closed.is_union_closed());
        for &m in f.members() {
            prop_assert!(closed.contains(m));
        }
        prop_assert!(closed.contains(closed.full_mask()));
        // idempotent
        let twice = union_closure(closed.as_set_family());
        prop_assert_eq!(twice.members(), closed.members());
        // minimal: every added mask is a union of input masks, so re-closing
        // the inputs by brute force gives the same set
        let mut brute: BTreeSet<u64> = f.members().iter().copied().collect();
        loop {
            let snapshot: Vec<u64> = brute.iter().copied().collect();
            let before = brute.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    brute.insert(a | b);
                }
            }
            if brute.len() == before {
                break;
            }
        }
        prop_assert_eq!(brute.into_iter().collect::<Vec<_>>(), closed.members().to_vec());
    }

    #[test]
    fn double_counting_and_density_range(f in arb_family()) {
        let profile = f.abundance_profile();
        prop_assert_eq!(profile.total, f.size_sum());
        for &c in &profile.counts {
            prop_assert!(c >= 1 && c <= f.len() as u64);
        }
        let d = f.density();
        prop_assert!(d > ratio_u64(0, 1));
        prop_assert!(d <= ratio_u64(1, 1));
        let is_universe_only = f.len() == 1 && f.members()[0] == f.full_mask();
        prop_assert_eq!(d == ratio_u64(1, 1), is_universe_only);
    }

    #[test]
    fn certified_checks_on_random_closures(f in arb_family()) {
        let closed = union_closure(&f);
        prop_assert_eq!(check_reimer(&closed).verdict, Verdict::Proven);
        prop_assert_eq!(check_density_lower(&closed).verdict, Verdict::Proven);
        let (frankl, _) = check_frankl(&closed);
        prop_assert!(frankl, "n = {} is within the settled range", closed.n());
    }

    #[test]
    fn duplicate_column_deletion_preserves_member_count(seed in any::<u64>()) {
        // families with |F| < n always have a duplicate-column pair, and
        // deleting either element of the pair merges no members
        for f in sample_random_ucf(6, 8, seed, 0.25).unwrap() {
            if f.len() < f.n() {
                let w = equal_pair_direct(f.as_set_family()).unwrap();
                let d = f.delete_element(w.a).unwrap();
                prop_assert_eq!(d.len(), f.len());
            }
        }
    }

    #[test]
    fn witness_methods_agree_on_validity(seed in any::<u64>()) {
        for f in sample_random_ucf(7, 8, seed, 0.2).unwrap() {
            if f.n() >= 2 && f.len() < f.n() {
                let direct = equal_pair_direct(f.as_set_family()).unwrap();
                let constructive = lemma2_witness(&f).unwrap();
                prop_assert!(f.columns_equal(direct.a, direct.b));
                prop_assert!(f.columns_equal(constructive.a, constructive.b));
                prop_assert!(constructive.a != constructive.b);
            }
        }
    }
}

/// Independently computed labeled counts of union-closed families with
/// universe exactly `{0,..,n-1}` (brute-force subset-lattice scans).
const LABELED_COUNTS: [(usize, u64); 5] = [(1, 2), (2, 8), (3, 90), (4, 4542), (5, 2_747_402)];

#[test]
fn enumeration_orbit_sizes_sum_to_labeled_counts() {
    use itertools::Itertools;
    for (n, labeled) in LABELED_COUNTS {
        let reps = enumerate_ucf(n, None).unwrap();
        let mut total = 0u64;
        for f in &reps {
            let mut images: HashSet<Vec<u64>> = HashSet::new();
            for perm in (0..n).permutations(n) {
                let mut img: Vec<u64> = f
                    .members()
                    .iter()
                    .map(|&m| {
                        let mut out = 0u64;
                        let mut bits = m;
                        while bits != 0 {
                            let i = bits.trailing_zeros() as usize;
                            out |= 1 << perm[i];
                            bits &= bits - 1;
                        }
                        out
                    })
                    .collect();
                img.sort_unstable();
                images.insert(img);
            }
            total += images.len() as u64;
        }
        assert_eq!(total, labeled, "orbit sizes at n={n} must sum to the labeled count");
    }
}

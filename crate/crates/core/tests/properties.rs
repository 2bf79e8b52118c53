use fixedbitset::FixedBitSet;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treetope::corpus::{random_tree, random_weight};
use treetope::enumeration::{fundamental_f_polynomial_of_system, lipschitz_f_polynomial_of_system};
use treetope::oracle::{lipschitz_vertices, minkowski_check};
use treetope::rational::rat;
use treetope::{
    decompose, format_rational, parse_rational, reconstruct_tree, split_metric, tree_to_metric, tree_to_splits,
    DistanceMatrix, FlatLattice, Rational, SplitMatroid, Strategy, WeightedSplitSystem, XTree,
};

fn tree(seed: u64, n: usize) -> XTree {
    random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn subsets(len: usize) -> impl Iterator<Item = FixedBitSet> {
    (0u32..1 << len).map(move |mask| {
        let mut set = FixedBitSet::with_capacity(len);
        set.extend((0..len).filter(|k| mask >> k & 1 == 1));
        set
    })
}

fn one_split(system: &WeightedSplitSystem, k: usize) -> DistanceMatrix {
    let single = WeightedSplitSystem::new(
        system.labels().to_vec(),
        vec![(system.split(k).clone(), system.weight(k).clone())],
    )
    .unwrap();
    split_metric(&single)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(numer in -10_000i64..10_000, denom in 1i64..10_000) {
        let r = rat(numer, denom);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn tree_metric_tree_round_trip(seed in any::<u64>(), n in 2usize..9) {
        let t = tree(seed, n);
        let m = tree_to_metric(&t);
        let rebuilt = reconstruct_tree(&m).unwrap();
        prop_assert_eq!(tree_to_metric(&rebuilt), m.clone());
        prop_assert_eq!(tree_to_splits(&rebuilt).unwrap(), tree_to_splits(&t).unwrap());
        prop_assert_eq!(decompose(&m).unwrap(), tree_to_splits(&t).unwrap());
    }

    #[test]
    fn at_most_2n_minus_3_splits(seed in any::<u64>(), n in 2usize..10) {
        let system = decompose(&tree_to_metric(&tree(seed, n))).unwrap();
        prop_assert!(system.len() <= 2 * n - 3);
        prop_assert!(system.is_compatible_system().0);
    }

    #[test]
    fn split_metric_is_additive(seed in any::<u64>(), n in 2usize..8) {
        let t = tree(seed, n);
        let system = tree_to_splits(&t).unwrap();
        let m = split_metric(&system);
        prop_assert_eq!(&m, &tree_to_metric(&t));
        let summed = (1..system.len()).fold(one_split(&system, 0), |acc, k| acc.sum(&one_split(&system, k)).unwrap());
        prop_assert_eq!(summed, m);
    }

    #[test]
    fn matroid_rank_axioms(seed in any::<u64>(), n in 3usize..7) {
        let system = tree_to_splits(&tree(seed, n)).unwrap();
        let matroid = SplitMatroid::new(&system);
        let all: Vec<FixedBitSet> = subsets(matroid.len()).collect();
        for a in &all {
            let ra = matroid.rank(a);
            prop_assert!(ra <= a.count_ones(..));
            prop_assert_eq!(ra, matroid.rank_linalg(a));
            prop_assert_eq!(ra, matroid.rank_partition(a).unwrap());
            for k in 0..matroid.len() {
                let mut grown = a.clone();
                grown.insert(k);
                let rg = matroid.rank(&grown);
                prop_assert!(rg == ra || rg == ra + 1);
            }
        }
        // submodularity on a sample of pairs
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(11) {
                let mut union = a.clone();
                union.union_with(b);
                let mut meet = a.clone();
                meet.intersect_with(b);
                prop_assert!(matroid.rank(&union) + matroid.rank(&meet) <= matroid.rank(a) + matroid.rank(b));
            }
        }
    }

    #[test]
    fn characteristic_polynomial_is_a_subset_sum(seed in any::<u64>(), n in 3usize..7) {
        let system = tree_to_splits(&tree(seed, n)).unwrap();
        prop_assume!(system.len() <= 12);
        let matroid = SplitMatroid::new(&system);
        let lattice = FlatLattice::new(&matroid);
        let r = lattice.rank();
        let chi = lattice.characteristic_polynomial();
        let mut sums = vec![0i64; r + 1];
        for s in subsets(matroid.len()) {
            let sign = if s.count_ones(..) % 2 == 0 { 1 } else { -1 };
            sums[r - matroid.rank(&s)] += sign;
        }
        for (d, c) in sums.iter().enumerate() {
            prop_assert_eq!(chi.coeff(d), *c);
        }
    }

    #[test]
    fn f_vectors_ignore_weights(seed in any::<u64>(), n in 2usize..8) {
        let system = tree_to_splits(&tree(seed, n)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let other = system.reweighted(|_, _| random_weight(&mut rng)).unwrap();
        prop_assert_eq!(
            lipschitz_f_polynomial_of_system(&system).unwrap(),
            lipschitz_f_polynomial_of_system(&other).unwrap()
        );
        prop_assert_eq!(
            fundamental_f_polynomial_of_system(&system).ok(),
            fundamental_f_polynomial_of_system(&other).ok()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Sums of Lipschitz vertices for `d₁` and `d₂` are Lipschitz for `d₁ + d₂`.
    #[test]
    fn lipschitz_sums_are_monotone(s1 in any::<u64>(), s2 in any::<u64>(), n in 2usize..5) {
        let d1 = tree_to_metric(&tree(s1, n));
        let d2 = tree_to_metric(&tree(s2, n));
        let d = d1.sum(&d2).unwrap();
        let v1 = lipschitz_vertices(&d1, Strategy::Sequential).unwrap();
        let v2 = lipschitz_vertices(&d2, Strategy::Sequential).unwrap();
        for x in &v1 {
            for y in &v2 {
                let z: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                prop_assert!(z.iter().fold(Rational::zero(), |acc, c| acc + c).is_zero());
                for i in 0..n {
                    for j in 0..n {
                        prop_assert!(&z[i] - &z[j] <= *d.get(i, j));
                    }
                }
            }
        }
    }

    /// The Lipschitz polytope is the Minkowski sum of the weighted split segments.
    #[test]
    fn lipschitz_polytope_is_a_zonotope(seed in any::<u64>(), n in 2usize..6) {
        let t = tree(seed, n);
        let vertices = lipschitz_vertices(&tree_to_metric(&t), Strategy::Parallel).unwrap();
        prop_assert!(minkowski_check(&tree_to_splits(&t).unwrap(), &vertices));
    }
}

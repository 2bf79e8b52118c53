//! Named tree families and seeded random X-trees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{int, Rational};
use crate::tree::{Edge, XTree};

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn edge(a: usize, b: usize, weight: Rational) -> Edge {
    Edge { a, b, weight }
}

/// The n-caterpillar with unit edges: a spine of n−2 inner vertices, two
/// leaves on each end of the spine and one on every other spine vertex.
pub fn caterpillar(n: usize) -> XTree {
    assert!(n >= 3, "a caterpillar needs at least three leaves");
    let spine = n - 2;
    let mut edges: Vec<Edge> = (1..spine).map(|k| edge(k - 1, k, int(1))).collect();
    let mut placement = Vec::with_capacity(n);
    for leaf in 0..n {
        let host = leaf.saturating_sub(1).min(spine - 1);
        placement.push(spine + leaf);
        edges.push(edge(host, spine + leaf, int(1)));
    }
    XTree::new(names(n), placement, spine + n, edges).expect("caterpillar is an X-tree")
}

/// n leaves on a common centre, every leg of the given length.
pub fn star(n: usize, leg: Rational) -> XTree {
    assert!(n >= 2);
    let edges = (1..=n).map(|v| edge(0, v, leg.clone())).collect();
    XTree::new(names(n), (1..=n).collect(), n + 1, edges).expect("star is an X-tree")
}

/// n points on a path with unit spacing, each vertex labelled.
pub fn path(n: usize) -> XTree {
    assert!(n >= 1);
    let edges = (1..n).map(|v| edge(v - 1, v, int(1))).collect();
    XTree::new(names(n), (0..n).collect(), n, edges).expect("path is an X-tree")
}

/// A random positive rational with numerator and denominator at most 100.
pub fn random_weight(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(1..=100i64).into(), rng.gen_range(1..=100i64).into())
}

/// A random tree on `n` vertices, every vertex carrying exactly one point.
pub fn random_full_tree(n: usize, rng: &mut impl Rng) -> XTree {
    assert!(n >= 1);
    let edges = (1..n)
        .map(|v| edge(rng.gen_range(0..v), v, random_weight(rng)))
        .collect();
    let mut placement: Vec<usize> = (0..n).collect();
    placement.shuffle(rng);
    XTree::new(names(n), placement, n, edges).expect("labelled tree is an X-tree")
}

/// A random X-tree on `n` points with distinct positions, so the induced
/// distance is a metric. Internal vertices may carry labels.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> XTree {
    assert!(n >= 2);
    loop {
        let vertices = rng.gen_range(n..=2 * n - 2);
        let parents: Vec<usize> = (1..vertices).map(|v| rng.gen_range(0..v)).collect();
        let mut degree = vec![0usize; vertices];
        for (child, &parent) in parents.iter().enumerate() {
            degree[child + 1] += 1;
            degree[parent] += 1;
        }
        let mut forced: Vec<usize> = (0..vertices).filter(|&v| degree[v] <= 2).collect();
        if forced.len() > n || vertices < n {
            continue;
        }
        let mut optional: Vec<usize> = (0..vertices).filter(|&v| degree[v] > 2).collect();
        optional.shuffle(rng);
        forced.extend(optional.into_iter().take(n - forced.len()));
        forced.shuffle(rng);
        let edges = parents
            .iter()
            .enumerate()
            .map(|(child, &parent)| edge(parent, child + 1, random_weight(rng)))
            .collect();
        if let Ok(tree) = XTree::new(names(n), forced, vertices, edges) {
            return tree;
        }
    }
}

/// `count` random trees with 3 to 6 points, reproducible from `seed`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<XTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=6);
            random_tree(n, &mut rng)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{four_point_check, validate};
    use crate::split::tree_to_splits;
    use crate::tree::tree_to_metric;

    #[test]
    fn caterpillar_distances() {
        let m = tree_to_metric(&caterpillar(4));
        let expected = [[0, 2, 3, 3], [2, 0, 3, 3], [3, 3, 0, 2], [3, 3, 2, 0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), &int(d));
            }
        }
        for n in 3..=8 {
            assert_eq!(tree_to_splits(&caterpillar(n)).unwrap().len(), 2 * n - 3);
        }
    }

    #[test]
    fn families_have_expected_split_counts() {
        assert_eq!(tree_to_splits(&star(5, int(1))).unwrap().len(), 5);
        assert_eq!(tree_to_splits(&path(5)).unwrap().len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(tree_to_splits(&random_full_tree(6, &mut rng)).unwrap().len(), 5);
    }

    #[test]
    fn corpus_is_reproducible_and_metric() {
        let a = random_corpus(11, 40);
        assert_eq!(a, random_corpus(11, 40));
        for tree in &a {
            let m = tree_to_metric(tree);
            assert!((3..=6).contains(&m.len()));
            assert!(validate(&m).is_metric());
            assert!(four_point_check(&m).0);
        }
    }
}

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::linalg::Vector;
use crate::metric::Partition;
use crate::rational::Rational;
use crate::split::{split_metric, Split, WeightedSplitSystem};

/// Segment endpoint `(|B|/n)·𝟙_A − (|A|/n)·𝟙_B`, with `A` the side holding point 0.
fn endpoint(split: &Split) -> Vector {
    let n = split.ground_size();
    let b = split.side().len();
    let a = n - b;
    let inside = Rational::new(b.into(), n.into());
    let outside = -Rational::new(a.into(), n.into());
    (0..n)
        .map(|i| {
            if split.contains(i) {
                outside.clone()
            } else {
                inside.clone()
            }
        })
        .collect()
}

/// All `2^|S|` points `Σ ε_σ α_σ v_σ`.
pub fn signed_sums(system: &WeightedSplitSystem) -> BTreeSet<Vector> {
    let n = system.ground_size();
    let mut sums: BTreeSet<Vector> = BTreeSet::from([vec![Rational::zero(); n]]);
    for (split, weight) in system.weighted() {
        let v: Vector = endpoint(split).iter().map(|x| x * weight).collect();
        sums = sums
            .iter()
            .flat_map(|s| {
                let plus = s.iter().zip(&v).map(|(a, b)| a + b).collect();
                let minus = s.iter().zip(&v).map(|(a, b)| a - b).collect();
                [plus, minus]
            })
            .collect();
    }
    sums
}

/// Lifts a point of the zero-quotient back to sum-zero functions on the full set.
pub fn lift_from_quotient(partition: &Partition, y: &[Rational]) -> Vector {
    let map = partition.block_map();
    let n = map.len();
    let raw: Vec<&Rational> = map.iter().map(|&b| &y[b]).collect();
    let shift = raw.iter().fold(Rational::zero(), |acc, x| acc + *x) / Rational::from_integer(n.into());
    raw.into_iter().map(|x| x - &shift).collect()
}

/// Checks both inclusions between the zonotope of the split system and the
/// Lipschitz polytope of its split metric: every signed sum satisfies
/// `Σx = 0` and `x_i − x_j ≤ d(i,j)`, and every given vertex is a signed sum.
pub fn minkowski_check(system: &WeightedSplitSystem, vertices: &[Vector]) -> bool {
    let d = split_metric(system);
    let n = system.ground_size();
    let sums = signed_sums(system);
    let inside = sums.iter().all(|x| {
        x.iter().fold(Rational::zero(), |acc, v| acc + v).is_zero()
            && (0..n).all(|i| (0..n).all(|j| &x[i] - &x[j] <= *d.get(i, j)))
    });
    inside && vertices.iter().all(|v| sums.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;
    use crate::oracle::hrep::{lip_h_rep_with_partition, vertex_enumeration};
    use crate::par::Strategy;
    use crate::split::tree_to_splits;
    use crate::tree::tree_to_metric;

    fn lip_vertices(newick: &str) -> (WeightedSplitSystem, Vec<Vector>) {
        let tree = parse_newick(newick).unwrap();
        let (p, partition) = lip_h_rep_with_partition(&tree_to_metric(&tree)).unwrap();
        let verts = vertex_enumeration(&p, Strategy::Sequential).unwrap();
        let lifted = verts.iter().map(|y| lift_from_quotient(&partition, y)).collect();
        (tree_to_splits(&tree).unwrap(), lifted)
    }

    #[test]
    fn two_points() {
        let (s, v) = lip_vertices("(a:3)b;");
        assert_eq!(v.len(), 2);
        assert!(minkowski_check(&s, &v));
    }

    #[test]
    fn star_hexagon() {
        let (s, v) = lip_vertices("(a:1/2,b:1/2,c:1/2);");
        // ±(v₁+v₂+v₃) both vanish, leaving the six vertices and the centre
        assert_eq!(signed_sums(&s).len(), 7);
        assert_eq!(v.len(), 6);
        assert!(minkowski_check(&s, &v));
    }

    #[test]
    fn caterpillar() {
        let (s, v) = lip_vertices("((1:1,2:1):1,3:1,4:1);");
        assert_eq!(v.len(), 18);
        assert!(minkowski_check(&s, &v));
        let mut bogus = v.clone();
        bogus.push(v[0].iter().map(|x| x * Rational::from_integer(2.into())).collect());
        assert!(!minkowski_check(&s, &bogus));
    }

    #[test]
    fn pseudometric_lift() {
        let (s, v) = lip_vertices("(a:2,b:2)c;");
        assert!(minkowski_check(&s, &v));
        let tree = crate::tree::XTree::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0, 0, 1],
            2,
            vec![crate::tree::Edge {
                a: 0,
                b: 1,
                weight: crate::rational::int(3),
            }],
        )
        .unwrap();
        let (p, partition) = lip_h_rep_with_partition(&tree_to_metric(&tree)).unwrap();
        let verts: Vec<Vector> = vertex_enumeration(&p, Strategy::Sequential)
            .unwrap()
            .iter()
            .map(|y| lift_from_quotient(&partition, y))
            .collect();
        assert_eq!(verts.len(), 2);
        assert!(minkowski_check(&tree_to_splits(&tree).unwrap(), &verts));
    }
}

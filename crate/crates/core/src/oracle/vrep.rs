use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::chart::Chart;
use super::sweep::{checked, common_denominator, independent_subsets, with_fallback, Job, Swept};
use crate::error::{Error, Result};
use crate::field::{try_dot, Field};
use crate::linalg::{dot, Vector};
use crate::metric::DistanceMatrix;
use crate::par::Strategy;
use crate::rational::Rational;

/// Convex hull of finitely many points, duplicates removed, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub ambient_dim: usize,
    pub points: Vec<Vector>,
}

impl VPolytope {
    pub fn new(ambient_dim: usize, mut points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::DegenerateHull("no points".into()));
        }
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::DegenerateHull(
                "point length differs from ambient dimension".into(),
            ));
        }
        points.sort();
        points.dedup();
        Ok(Self { ambient_dim, points })
    }
}

/// A facet `a·x ≤ b` together with the indices of the points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vector,
    pub rhs: Rational,
    pub tight: Vec<usize>,
}

/// Generators `e_ij = (𝟙_i − 𝟙_j)/d(i,j)` over ordered pairs.
pub fn fundamental_v_rep(m: &DistanceMatrix) -> Result<VPolytope> {
    let n = m.len();
    if n < 2 {
        return Err(Error::TooFewPoints(2));
    }
    m.require_pseudometric()?;
    if let Some((i, j)) = m.first_zero_pair() {
        return Err(Error::NotAMetric(i, j));
    }
    let mut points = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let w = m.get(i, j).recip();
            let mut e = vec![Rational::zero(); n];
            e[i] = w.clone();
            e[j] = -w;
            points.push(e);
        }
    }
    VPolytope::new(n, points)
}

/// Facets of a V-polytope inside its affine hull of dimension m: each
/// affinely independent m-subset of points spans a hyperplane of the hull,
/// which is kept when every point lies weakly on one side. Facets are
/// deduplicated by tight set and returned in ambient coordinates.
pub fn facet_enumeration(p: &VPolytope, strategy: Strategy) -> Result<Vec<Facet>> {
    let chart = Chart::affine_hull(&p.points)?;
    let m = chart.dim();
    if m == 0 {
        return Err(Error::DegenerateHull("a single point has no proper facets".into()));
    }
    let local: Vec<Vector> = p.points.iter().map(|x| chart.to_local(x)).collect();
    let found = hyperplanes(&local, m, strategy);
    let mut facets: Vec<Facet> = found
        .into_iter()
        .map(|(tight, (c, rhs))| {
            let (normal, rhs) = lift_normal(&chart, &c, &rhs);
            Facet { normal, rhs, tight }
        })
        .collect();
    facets.sort_by(|a, b| a.tight.cmp(&b.tight));
    Ok(facets)
}

/// Supporting hyperplanes in local coordinates, keyed by tight set. Points
/// enter homogeneously as `λ(y, 1)` with `λ > 0` clearing denominators, so a
/// hyperplane `c·y = r` is the kernel `(c, −r)` of m independent such rows.
fn hyperplanes(local: &[Vector], m: usize, strategy: Strategy) -> BTreeMap<Vec<usize>, (Vector, Rational)> {
    let lifted: Vec<(Vector, Rational)> = local
        .iter()
        .map(|y| {
            let scale = common_denominator(y);
            let mut row: Vector = y.iter().map(|v| v * &scale).collect();
            row.push(scale);
            (row, Rational::zero())
        })
        .collect();
    with_fallback(&lifted, &Supporting { m, strategy })
}

struct Supporting {
    m: usize,
    strategy: Strategy,
}

impl Job for Supporting {
    type Output = BTreeMap<Vec<usize>, (Vector, Rational)>;

    fn run<F: Field>(&self, points: &[(Vec<F>, F)]) -> Swept<Self::Output> {
        let found = independent_subsets(self.strategy, self.m + 1, points, self.m, |basis, _| {
            let h = checked(basis.try_kernel_vector())?;
            let mut below = false;
            let mut above = false;
            let mut tight = Vec::new();
            for (i, (x, _)) in points.iter().enumerate() {
                match checked(try_dot(&h, x))?.cmp(&F::zero()) {
                    Ordering::Less => below = true,
                    Ordering::Greater => above = true,
                    Ordering::Equal => tight.push(i),
                }
                if below && above {
                    return Ok(None);
                }
            }
            let mut h: Vector = h.iter().map(F::to_rational).collect();
            if above {
                h.iter_mut().for_each(|x| *x = -x.clone());
            }
            let rhs = -h.pop().expect("homogeneous coordinate");
            Ok(Some((tight, (h, rhs))))
        })?;
        Ok(found.into_iter().collect())
    }
}

/// Expresses the local inequality `c·y ≤ r` as `a·x ≤ b` on the hull.
fn lift_normal(chart: &Chart, c: &[Rational], r: &Rational) -> (Vector, Rational) {
    let mut normal = vec![Rational::zero(); chart.ambient_dim()];
    for (value, &f) in c.iter().zip(chart.free_columns()) {
        normal[f] = value.clone();
    }
    let rhs = r + dot(&normal, chart.origin());
    (normal, rhs)
}

/// Points that are vertices: those equal to the intersection of the facets through them.
pub fn vertex_indices(p: &VPolytope, facets: &[Facet]) -> Vec<usize> {
    (0..p.points.len())
        .filter(|&i| {
            let mut through = facets.iter().filter(|f| f.tight.binary_search(&i).is_ok());
            let Some(first) = through.next() else {
                return false;
            };
            let common = through.fold(first.tight.clone(), |acc, f| {
                acc.into_iter().filter(|k| f.tight.binary_search(k).is_ok()).collect()
            });
            common == [i]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::tests::matrix;
    use crate::rational::{int, rat};

    #[test]
    fn two_point_generators() {
        let p = fundamental_v_rep(&matrix(&[&[0, 2], &[2, 0]])).unwrap();
        assert_eq!(p.points, vec![vec![rat(-1, 2), rat(1, 2)], vec![rat(1, 2), rat(-1, 2)]]);
        let facets = facet_enumeration(&p, Strategy::Sequential).unwrap();
        assert_eq!(facets.len(), 2);
        assert_eq!(vertex_indices(&p, &facets), vec![0, 1]);
    }

    #[test]
    fn equilateral_triangle_gives_hexagon() {
        let p = fundamental_v_rep(&matrix(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(p.points.len(), 6);
        let facets = facet_enumeration(&p, Strategy::Parallel).unwrap();
        assert_eq!(facets.len(), 6);
        assert_eq!(vertex_indices(&p, &facets).len(), 6);
        for f in &facets {
            for (i, x) in p.points.iter().enumerate() {
                let value = dot(&f.normal, x);
                assert!(value <= f.rhs);
                assert_eq!(value == f.rhs, f.tight.contains(&i));
            }
        }
    }

    #[test]
    fn path_metric_has_a_non_vertex_generator() {
        let p = fundamental_v_rep(&matrix(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]])).unwrap();
        let facets = facet_enumeration(&p, Strategy::Sequential).unwrap();
        assert_eq!(facets.len(), 4);
        let vertices = vertex_indices(&p, &facets);
        assert_eq!(vertices.len(), 4);
        let midpoint = vec![rat(1, 2), int(0), rat(-1, 2)];
        let k = p.points.iter().position(|x| *x == midpoint).unwrap();
        assert!(!vertices.contains(&k));
    }

    #[test]
    fn caterpillar_facets() {
        let m = matrix(&[&[0, 2, 3, 4], &[2, 0, 3, 4], &[3, 3, 0, 2], &[4, 4, 2, 0]]);
        let p = fundamental_v_rep(&m).unwrap();
        let seq = facet_enumeration(&p, Strategy::Sequential).unwrap();
        assert_eq!(seq.len(), 18);
        assert_eq!(seq, facet_enumeration(&p, Strategy::Parallel).unwrap());
    }

    #[test]
    fn refusals() {
        assert_eq!(fundamental_v_rep(&matrix(&[&[0]])), Err(Error::TooFewPoints(2)));
        let pseudo = matrix(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(fundamental_v_rep(&pseudo), Err(Error::NotAMetric(0, 1)));
        let single = VPolytope::new(2, vec![vec![int(1), int(1)]]).unwrap();
        assert!(matches!(
            facet_enumeration(&single, Strategy::Sequential),
            Err(Error::DegenerateHull(_))
        ));
    }
}

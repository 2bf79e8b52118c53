use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, nullspace, rref, sub, Vector};
use crate::rational::Rational;

/// Exact affine coordinates on an affine subspace `{x : E·x = e}`.
///
/// The basis comes from the free columns of the reduced system, so the local
/// coordinates of a point in the subspace are just its free entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    origin: Vector,
    basis: Vec<Vector>,
    free: Vec<usize>,
}

impl Chart {
    /// Chart of the solution set of `rows · x = rhs` in `ncols` unknowns.
    pub fn of_equalities(rows: &[Vector], rhs: &[Rational], ncols: usize) -> Result<Self> {
        let augmented: Vec<Vector> = rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
            .collect();
        let (reduced, pivots) = rref(&augmented);
        if pivots.last() == Some(&ncols) {
            return Err(Error::DegenerateHull("equalities are inconsistent".into()));
        }
        let mut origin = vec![Rational::zero(); ncols];
        for (row, &p) in reduced.iter().zip(&pivots) {
            origin[p] = row[ncols].clone();
        }
        let free = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        Ok(Self {
            origin,
            basis: nullspace(rows, ncols),
            free,
        })
    }

    /// Chart of the affine hull of a nonempty point set.
    pub fn affine_hull(points: &[Vector]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::DegenerateHull("no points".into()))?;
        let diffs: Vec<Vector> = points[1..].iter().map(|p| sub(p, first)).collect();
        let ncols = first.len();
        let normals = if diffs.is_empty() {
            nullspace(&[vec![Rational::zero(); ncols]], ncols)
        } else {
            nullspace(&diffs, ncols)
        };
        let rhs: Vec<Rational> = normals.iter().map(|c| dot(c, first)).collect();
        Self::of_equalities(&normals, &rhs, ncols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    /// Ambient columns that serve as local coordinates.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    /// Local coordinates of a point assumed to lie in the subspace.
    pub fn to_local(&self, x: &[Rational]) -> Vector {
        self.free.iter().map(|&f| &x[f] - &self.origin[f]).collect()
    }

    pub fn to_ambient(&self, y: &[Rational]) -> Vector {
        let mut x = self.origin.clone();
        for (c, b) in y.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += c * bi;
                }
            }
        }
        x
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.to_ambient(&self.to_local(x)) == x
    }

    /// Pulls `a·x ≤ b` back to local coordinates.
    pub fn pull_back(&self, a: &[Rational], b: &Rational) -> (Vector, Rational) {
        let row = self.basis.iter().map(|v| dot(a, v)).collect();
        (row, b - dot(a, &self.origin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sum_zero_hyperplane() {
        let chart = Chart::of_equalities(&[v(&[1, 1, 1])], &[int(0)], 3).unwrap();
        assert_eq!(chart.dim(), 2);
        let x = v(&[2, -5, 3]);
        assert!(chart.contains(&x));
        assert_eq!(chart.to_ambient(&chart.to_local(&x)), x);
        assert!(!chart.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn hull_of_collinear_points() {
        let chart = Chart::affine_hull(&[v(&[1, 1, 0]), v(&[3, 2, 0]), v(&[5, 3, 0])]).unwrap();
        assert_eq!(chart.dim(), 1);
        assert!(chart.contains(&v(&[-1, 0, 0])));
        assert!(!chart.contains(&v(&[1, 1, 1])));
        let point = Chart::affine_hull(&[v(&[4, 4])]).unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.to_ambient(&[]), v(&[4, 4]));
    }

    #[test]
    fn inconsistent_equalities() {
        let rows = [v(&[1, 1]), v(&[2, 2])];
        assert!(Chart::of_equalities(&rows, &[int(0), int(1)], 2).is_err());
    }

    #[test]
    fn pull_back_preserves_values() {
        let chart = Chart::of_equalities(&[v(&[1, 1, 1])], &[int(3)], 3).unwrap();
        let (row, rhs) = chart.pull_back(&v(&[1, -1, 0]), &int(2));
        let x = v(&[4, 0, -1]);
        let lhs = dot(&row, &chart.to_local(&x));
        assert_eq!(lhs - rhs, dot(&v(&[1, -1, 0]), &x) - int(2));
    }
}

//! Exact Gaussian elimination over the rationals.
//!
//! Pivots are always the first nonzero entry of a row, so every routine here is
//! deterministic for a given input order.

use num_traits::{One, Zero};

pub use crate::field::Basis;
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

pub fn zeros(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        if x.is_one() {
            acc += y;
        } else if y.is_one() {
            acc += x;
        } else if (-x).is_one() {
            acc -= y;
        } else {
            acc += x * y;
        }
    }
    acc
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], factor: &Rational) -> Vector {
    a.iter().map(|x| x * factor).collect()
}

/// `row -= factor * other`, skipping zero entries of `other`.
fn axpy(row: &mut [Rational], factor: &Rational, other: &[Rational]) {
    for (x, y) in row.iter_mut().zip(other) {
        if !y.is_zero() {
            *x -= factor * y;
        }
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, found);
        let inv = m[next][col].recip();
        for x in m[next].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[next].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let factor = row[col].clone();
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    m.truncate(next);
    (m, pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut basis = Basis::new(rows.first().map_or(0, Vec::len));
    rows.iter()
        .filter(|row| basis.push((*row).clone(), Rational::zero()))
        .count()
}

/// Dimension of the affine hull of a point set (`-1` for the empty set).
pub fn affine_dimension<V: AsRef<[Rational]>>(points: &[V]) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    let first = first.as_ref();
    let mut basis = Basis::new(first.len());
    rest.iter()
        .filter(|p| basis.push(sub(p.as_ref(), first), Rational::zero()))
        .count() as isize
}

/// Basis of the null space `{x : rows · x = 0}` over `ncols` unknowns.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a · x = b`. Returns a particular solution and a null-space basis,
/// or `None` when the system is inconsistent.
pub fn solve_affine(a: &[Vector], b: &[Rational], ncols: usize) -> Option<(Vector, Vec<Vector>)> {
    let augmented: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(&augmented);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = zeros(ncols);
    for (row, &p) in reduced.iter().zip(&pivots) {
        particular[p] = row[ncols].clone();
    }
    Some((particular, nullspace(a, ncols)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[v(&[0, 0])]), 0);
    }

    #[test]
    fn rank_of_incompatible_quartet_normals() {
        // (1/2)(±1, ±1, ±1, ±1) patterns of 12|34, 13|24, 14|23
        let h = rat(1, 2);
        let m = -rat(1, 2);
        let rows = vec![
            vec![h.clone(), h.clone(), m.clone(), m.clone()],
            vec![h.clone(), m.clone(), h.clone(), m.clone()],
            vec![h.clone(), m.clone(), m.clone(), h.clone()],
        ];
        assert_eq!(rank(&rows), 3);
    }

    #[test]
    fn basis_solves_square_system() {
        let mut b = Basis::new(2);
        assert!(b.push(v(&[1, 1]), int(3)));
        assert!(!b.push(v(&[2, 2]), int(6)));
        assert!(b.push(v(&[1, -1]), int(1)));
        assert_eq!(b.solve(), v(&[2, 1]));
        b.pop();
        assert!(b.push(v(&[0, 2]), int(1)));
        assert_eq!(b.solve(), vec![rat(5, 2), rat(1, 2)]);
    }

    #[test]
    fn kernel_vector_is_orthogonal() {
        let mut b = Basis::new(3);
        b.push(v(&[1, 2, 3]), int(0));
        b.push(v(&[0, 1, 4]), int(0));
        let k = b.kernel_vector();
        assert!(k.iter().any(|x| !x.is_zero()));
        assert!(dot(&k, &v(&[1, 2, 3])).is_zero());
        assert!(dot(&k, &v(&[0, 1, 4])).is_zero());
    }

    #[test]
    fn affine_solution_and_nullspace() {
        let (x0, null) = solve_affine(&[v(&[1, 1, 1])], &[int(0)], 3).unwrap();
        assert!(dot(&x0, &v(&[1, 1, 1])).is_zero());
        assert_eq!(null.len(), 2);
        assert!(solve_affine(&[v(&[1, 1]), v(&[1, 1])], &[int(0), int(1)], 2).is_none());
    }

    #[test]
    fn affine_dimension_of_collinear_points() {
        let pts = vec![v(&[0, 0]), v(&[1, 1]), v(&[2, 2])];
        assert_eq!(affine_dimension(&pts), 1);
        assert_eq!(affine_dimension::<Vector>(&[]), -1);
        assert_eq!(affine_dimension(&pts[..1]), 0);
    }
}

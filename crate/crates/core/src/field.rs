//! Exact scalar fields and an incremental row basis over them.

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

use crate::rational::Rational;

/// Exact scalars with overflow-checked arithmetic. `None` signals overflow;
/// [`Rational`] never overflows, [`Small`] can.
pub trait Field: Clone + Ord + Send + Sync + std::fmt::Debug + Zero + One {
    fn try_add(&self, other: &Self) -> Option<Self>;
    fn try_sub(&self, other: &Self) -> Option<Self>;
    fn try_mul(&self, other: &Self) -> Option<Self>;
    fn try_div(&self, other: &Self) -> Option<Self>;
    fn from_rational(value: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
}

impl Field for Rational {
    fn try_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn try_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn try_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn from_rational(value: &Rational) -> Option<Self> {
        Some(value.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Machine-word rationals for the hot loops of the polytope oracle.
pub type Word = num_rational::Ratio<i64>;
/// Double-word rationals, tried when [`Word`] overflows.
pub type Small = num_rational::Ratio<i128>;

macro_rules! checked_field {
    ($ty:ty, $int:ty, $to:ident) => {
        impl Field for $ty {
            fn try_add(&self, other: &Self) -> Option<Self> {
                self.checked_add(other)
            }
            fn try_sub(&self, other: &Self) -> Option<Self> {
                self.checked_sub(other)
            }
            fn try_mul(&self, other: &Self) -> Option<Self> {
                self.checked_mul(other)
            }
            fn try_div(&self, other: &Self) -> Option<Self> {
                self.checked_div(other)
            }
            fn from_rational(value: &Rational) -> Option<Self> {
                Some(<$ty>::new_raw(value.numer().$to()?, value.denom().$to()?))
            }
            fn to_rational(&self) -> Rational {
                Rational::new((*self.numer()).into(), (*self.denom()).into())
            }
        }
    };
}

checked_field!(Word, i64, to_i64);
checked_field!(Small, i128, to_i128);

/// `Σ aᵢbᵢ` in any field.
pub fn try_dot<F: Field>(a: &[F], b: &[F]) -> Option<F> {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.try_add(&x.try_mul(y)?)?;
    }
    Some(acc)
}

/// A linearly independent row set, grown one row at a time and shrunk from the
/// back. Each stored row is reduced against its predecessors and scaled to a
/// unit pivot, which makes back substitution in reverse insertion order valid.
///
/// The `try_` methods return `None` on arithmetic overflow and leave the basis
/// unchanged; the plain methods are for fields that cannot overflow.
#[derive(Clone, Debug)]
pub struct Basis<F: Field = Rational> {
    cols: usize,
    rows: Vec<(Vec<F>, F, usize)>,
}

impl<F: Field> Basis<F> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::with_capacity(cols),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `row` (with right-hand side `rhs`) if it is independent of the stored rows.
    pub fn push(&mut self, row: Vec<F>, rhs: F) -> bool {
        self.try_push(row, rhs).expect("arithmetic overflow")
    }

    pub fn try_push(&mut self, mut row: Vec<F>, mut rhs: F) -> Option<bool> {
        debug_assert_eq!(row.len(), self.cols);
        for (stored, stored_rhs, pivot) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(stored) {
                if !y.is_zero() {
                    *x = x.try_sub(&factor.try_mul(y)?)?;
                }
            }
            rhs = rhs.try_sub(&factor.try_mul(stored_rhs)?)?;
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return Some(false);
        };
        if !row[pivot].is_one() {
            let p = row[pivot].clone();
            for x in row.iter_mut() {
                *x = x.try_div(&p)?;
            }
            rhs = rhs.try_div(&p)?;
        }
        self.rows.push((row, rhs, pivot));
        Some(true)
    }

    pub fn pop(&mut self) {
        self.rows.pop();
    }

    /// The unique solution of the stored system; requires a full-rank square system.
    pub fn solve(&self) -> Vec<F> {
        self.try_solve().expect("arithmetic overflow")
    }

    pub fn try_solve(&self) -> Option<Vec<F>> {
        assert_eq!(self.rows.len(), self.cols, "system is not square");
        self.back_substitute(vec![F::zero(); self.cols], true)
    }

    /// A nonzero vector orthogonal to all stored rows; requires corank one.
    pub fn kernel_vector(&self) -> Vec<F> {
        self.try_kernel_vector().expect("arithmetic overflow")
    }

    pub fn try_kernel_vector(&self) -> Option<Vec<F>> {
        assert_eq!(self.rows.len() + 1, self.cols, "kernel is not one-dimensional");
        let mut x = vec![F::zero(); self.cols];
        let mut is_pivot = vec![false; self.cols];
        for (_, _, p) in &self.rows {
            is_pivot[*p] = true;
        }
        let free = is_pivot.iter().position(|p| !p).expect("one free column");
        x[free] = F::one();
        self.back_substitute(x, false)
    }

    fn back_substitute(&self, mut x: Vec<F>, with_rhs: bool) -> Option<Vec<F>> {
        for (row, rhs, pivot) in self.rows.iter().rev() {
            let mut value = if with_rhs { rhs.clone() } else { F::zero() };
            for (j, c) in row.iter().enumerate() {
                if j != *pivot && !c.is_zero() && !x[j].is_zero() {
                    value = value.try_sub(&c.try_mul(&x[j])?)?;
                }
            }
            x[*pivot] = value;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_overflow_is_reported() {
        let big = Small::from_integer(i128::MAX);
        assert_eq!(big.try_add(&Small::from_integer(1)), None);
        assert_eq!(big.try_mul(&Small::from_integer(3)), None);
        assert_eq!(
            Small::from_integer(i128::MAX / 2)
                .try_add(&Small::from_integer(1))
                .map(|x| x > Small::zero()),
            Some(true)
        );
        assert!(Small::from_rational(&rat(1, 3)).is_some());
    }

    #[test]
    fn bases_agree_across_fields() {
        let rows = [[2, 1, 0], [0, 1, 3], [1, 1, 1]];
        let rhs = [1, 2, 3];
        let mut exact: Basis<Rational> = Basis::new(3);
        let mut small: Basis<Small> = Basis::new(3);
        for (r, b) in rows.iter().zip(rhs) {
            assert!(exact.push(r.iter().map(|&x| int(x)).collect(), int(b)));
            assert!(small.push(
                r.iter().map(|&x| Small::from_integer(x.into())).collect(),
                Small::from_integer(b.into())
            ));
        }
        let x = exact.solve();
        let y: Vec<Rational> = small.solve().iter().map(Field::to_rational).collect();
        assert_eq!(x, y);
        for (r, b) in rows.iter().zip(rhs) {
            let lhs: Rational = r.iter().zip(&x).map(|(&a, v)| int(a) * v).sum();
            assert_eq!(lhs, int(b));
        }
    }

    #[test]
    fn kernel_vector_is_orthogonal() {
        let mut b: Basis<Small> = Basis::new(3);
        b.push(
            vec![Small::from_integer(1), Small::from_integer(2), Small::from_integer(3)],
            Small::from_integer(0),
        );
        b.push(
            vec![Small::from_integer(0), Small::from_integer(1), Small::from_integer(1)],
            Small::from_integer(0),
        );
        let k = b.kernel_vector();
        assert_eq!(
            try_dot(
                &k,
                &[Small::from_integer(1), Small::from_integer(2), Small::from_integer(3)]
            ),
            Some(Small::from_integer(0))
        );
        assert!(k.iter().any(|x| !x.is_zero()));
    }
}

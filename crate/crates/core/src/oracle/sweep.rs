use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::field::{Basis, Field, Small, Word};
use crate::par::{try_map_indices, Strategy};
use crate::rational::Rational;

/// Arithmetic overflow in a machine-word field; the caller retries exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct Overflow;

pub(super) type Swept<T> = Result<T, Overflow>;

pub(super) fn checked<T>(value: Option<T>) -> Swept<T> {
    value.ok_or(Overflow)
}

/// Converts a rational matrix into `F`, if every entry fits.
pub(super) fn convert<F: Field>(rows: &[(Vec<Rational>, Rational)]) -> Option<Vec<(Vec<F>, F)>> {
    rows.iter()
        .map(|(a, b)| {
            Some((
                a.iter().map(F::from_rational).collect::<Option<Vec<F>>>()?,
                F::from_rational(b)?,
            ))
        })
        .collect()
}

/// Least common multiple of the denominators.
pub(super) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let lcm = values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    Rational::from_integer(lcm)
}

/// A computation that can run over any exact field.
pub(super) trait Job {
    type Output;
    fn run<F: Field>(&self, rows: &[(Vec<F>, F)]) -> Swept<Self::Output>;
}

/// Runs `job` in one-word, then two-word rationals, and finally in big
/// rationals, moving on whenever the data or an intermediate overflows.
pub(super) fn with_fallback<J: Job>(rows: &[(Vec<Rational>, Rational)], job: &J) -> J::Output {
    if let Some(Ok(found)) = convert::<Word>(rows).map(|r| job.run(&r)) {
        return found;
    }
    if let Some(Ok(found)) = convert::<Small>(rows).map(|r| job.run(&r)) {
        return found;
    }
    job.run(rows).expect("big rationals do not overflow")
}

/// Depth-first walk over increasing index tuples whose rows stay linearly
/// independent. Each node keeps the rows still available, reduced against
/// the rows chosen so far; rows that reduce to zero leave the whole subtree.
struct Walk<'a, F: Field, L> {
    rows: &'a [(Vec<F>, F)],
    leaf: &'a L,
}

impl<F, L, T> Walk<'_, F, L>
where
    F: Field,
    L: Fn(&Basis<F>, &[usize]) -> Swept<Option<T>>,
{
    fn run(
        &self,
        basis: &mut Basis<F>,
        chosen: &mut Vec<usize>,
        candidates: &[(usize, Vec<F>)],
        remaining: usize,
        out: &mut Vec<T>,
    ) -> Swept<()> {
        if remaining == 0 {
            out.extend((self.leaf)(basis, chosen)?);
            return Ok(());
        }
        for (pos, (i, reduced)) in candidates.iter().enumerate() {
            if candidates.len() - pos < remaining {
                break;
            }
            let (row, rhs) = self.rows[*i].clone();
            let independent = checked(basis.try_push(row, rhs))?;
            debug_assert!(independent);
            chosen.push(*i);
            let next = if remaining > 1 {
                eliminate(reduced, &candidates[pos + 1..])?
            } else {
                Vec::new()
            };
            let result = self.run(basis, chosen, &next, remaining - 1, out);
            chosen.pop();
            basis.pop();
            result?;
        }
        Ok(())
    }
}

/// Removes the component along `pivot_row` from each candidate, dropping those that vanish.
fn eliminate<F: Field>(pivot_row: &[F], candidates: &[(usize, Vec<F>)]) -> Swept<Vec<(usize, Vec<F>)>> {
    let p = pivot_row
        .iter()
        .position(|x| !x.is_zero())
        .expect("candidates are nonzero");
    let mut out = Vec::with_capacity(candidates.len());
    for (i, r) in candidates {
        let mut r = r.clone();
        if !r[p].is_zero() {
            let factor = checked(r[p].try_div(&pivot_row[p]))?;
            for (x, y) in r.iter_mut().zip(pivot_row) {
                if !y.is_zero() {
                    *x = checked(x.try_sub(&checked(factor.try_mul(y))?))?;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            out.push((*i, r));
        }
    }
    Ok(out)
}

/// Every independent `size`-subset of `rows`, fanned out over the smallest index.
pub(super) fn independent_subsets<F, T, L>(
    strategy: Strategy,
    cols: usize,
    rows: &[(Vec<F>, F)],
    size: usize,
    leaf: L,
) -> Swept<Vec<T>>
where
    F: Field,
    T: Send,
    L: Fn(&Basis<F>, &[usize]) -> Swept<Option<T>> + Sync + Send,
{
    let walk = Walk { rows, leaf: &leaf };
    let candidates: Vec<(usize, Vec<F>)> = rows
        .iter()
        .enumerate()
        .filter(|(_, (r, _))| r.iter().any(|x| !x.is_zero()))
        .map(|(i, (r, _))| (i, r.clone()))
        .collect();
    let mut out = Vec::new();
    if size == 0 {
        walk.run(&mut Basis::new(cols), &mut Vec::new(), &[], 0, &mut out)?;
        return Ok(out);
    }
    let parts = try_map_indices(strategy, candidates.len(), |pos| -> Swept<Vec<T>> {
        let mut out = Vec::new();
        if candidates.len() - pos >= size {
            let mut basis = Basis::new(cols);
            let (i, reduced) = &candidates[pos];
            let (r, b) = rows[*i].clone();
            checked(basis.try_push(r, b))?;
            let next = eliminate(reduced, &candidates[pos + 1..])?;
            walk.run(&mut basis, &mut vec![*i], &next, size - 1, &mut out)?;
        }
        Ok(out)
    })?;
    Ok(parts.into_iter().flatten().collect())
}

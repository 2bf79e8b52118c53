use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::chart::Chart;
use super::sweep::{checked, common_denominator, independent_subsets, with_fallback, Job, Swept};
use crate::error::{Error, Result};
use crate::field::{try_dot, Basis, Field};
use crate::linalg::{dot, Vector};
use crate::metric::{zero_quotient, DistanceMatrix, Partition};
use crate::par::Strategy;
use crate::rational::Rational;

/// `{x : E·x = e, A·x ≤ b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub ambient_dim: usize,
    pub equalities: Vec<(Vector, Rational)>,
    pub inequalities: Vec<(Vector, Rational)>,
}

impl HPolytope {
    pub fn new(
        ambient_dim: usize,
        equalities: Vec<(Vector, Rational)>,
        inequalities: Vec<(Vector, Rational)>,
    ) -> Result<Self> {
        let p = Self {
            ambient_dim,
            equalities,
            inequalities,
        };
        if p.equalities
            .iter()
            .chain(&p.inequalities)
            .any(|(a, _)| a.len() != ambient_dim)
        {
            return Err(Error::DegenerateHull(
                "constraint length differs from ambient dimension".into(),
            ));
        }
        p.chart()?;
        Ok(p)
    }

    pub fn chart(&self) -> Result<Chart> {
        let (rows, rhs): (Vec<Vector>, Vec<Rational>) = self.equalities.iter().cloned().unzip();
        Chart::of_equalities(&rows, &rhs, self.ambient_dim)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|(a, b)| &dot(a, x) == b) && self.inequalities.iter().all(|(a, b)| &dot(a, x) <= b)
    }

    /// Indices of the inequalities tight at `x`.
    pub fn tight(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.inequalities.len())
            .filter(|&k| {
                let (a, b) = &self.inequalities[k];
                &dot(a, x) == b
            })
            .collect()
    }
}

/// The Lipschitz polytope of the zero-quotient: `Σx = 0` and `x_i − x_j ≤ d(i,j)`
/// for all ordered pairs `i ≠ j`, without removing redundant rows.
pub fn lip_h_rep(m: &DistanceMatrix) -> Result<HPolytope> {
    Ok(lip_h_rep_with_partition(m)?.0)
}

pub(crate) fn lip_h_rep_with_partition(m: &DistanceMatrix) -> Result<(HPolytope, Partition)> {
    let (q, partition) = zero_quotient(m)?;
    let n = q.len();
    let unit = |i: usize, j: usize| {
        let mut a = vec![Rational::zero(); n];
        a[i] = Rational::one();
        a[j] = -Rational::one();
        a
    };
    let inequalities = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| (unit(i, j), q.get(i, j).clone()))
        .collect();
    let equalities = vec![(vec![Rational::one(); n], Rational::zero())];
    Ok((HPolytope::new(n, equalities, inequalities)?, partition))
}

/// Every vertex, by solving each independent m-subset of inequalities in the
/// chart of the equality system and keeping feasible solutions. Fails with
/// [`Error::Unbounded`] when the recession cone is nonzero.
pub fn vertex_enumeration(p: &HPolytope, strategy: Strategy) -> Result<Vec<Vector>> {
    let chart = p.chart()?;
    let m = chart.dim();
    let local: Vec<(Vector, Rational)> = p
        .inequalities
        .iter()
        .map(|(a, b)| {
            let (a, b) = chart.pull_back(a, b);
            let scale = common_denominator(&a);
            (a.iter().map(|x| x * &scale).collect(), b * scale)
        })
        .collect();
    if !with_fallback(&local, &Bounded { m, strategy }) {
        return Err(Error::Unbounded);
    }
    let found = with_fallback(&local, &FeasibleBases { m, strategy });
    let mut vertices: Vec<Vector> = found.iter().map(|y| chart.to_ambient(y)).collect();
    vertices.sort();
    Ok(vertices)
}

struct FeasibleBases {
    m: usize,
    strategy: Strategy,
}

impl Job for FeasibleBases {
    type Output = BTreeSet<Vector>;

    fn run<F: Field>(&self, rows: &[(Vec<F>, F)]) -> Swept<BTreeSet<Vector>> {
        let found = independent_subsets(self.strategy, self.m, rows, self.m, |basis, _| {
            let y = checked(basis.try_solve())?;
            for (a, b) in rows {
                if &checked(try_dot(a, &y))? > b {
                    return Ok(None);
                }
            }
            Ok(Some(y.iter().map(F::to_rational).collect()))
        })?;
        Ok(found.into_iter().collect())
    }
}

struct Bounded {
    m: usize,
    strategy: Strategy,
}

impl Job for Bounded {
    type Output = bool;

    fn run<F: Field>(&self, rows: &[(Vec<F>, F)]) -> Swept<bool> {
        bounded(rows, self.m, self.strategy)
    }
}

/// The cone `{y : A·y ≤ 0}` is trivial iff `A` has full column rank and no
/// (m−1)-subset of rows cuts out a ray satisfying all constraints.
fn bounded<F: Field>(rows: &[(Vec<F>, F)], m: usize, strategy: Strategy) -> Swept<bool> {
    if m == 0 {
        return Ok(true);
    }
    let homogeneous: Vec<(Vec<F>, F)> = rows.iter().map(|(a, _)| (a.clone(), F::zero())).collect();
    let mut basis = Basis::new(m);
    for (a, b) in &homogeneous {
        checked(basis.try_push(a.clone(), b.clone()))?;
    }
    if basis.len() < m {
        return Ok(false);
    }
    let rays = independent_subsets(strategy, m, &homogeneous, m - 1, |basis, _| {
        let r = checked(basis.try_kernel_vector())?;
        let mut below = false;
        let mut above = false;
        for (a, _) in &homogeneous {
            let v = checked(try_dot(a, &r))?;
            below |= v < F::zero();
            above |= v > F::zero();
            if below && above {
                return Ok(None);
            }
        }
        Ok(Some(()))
    })?;
    Ok(rays.is_empty())
}

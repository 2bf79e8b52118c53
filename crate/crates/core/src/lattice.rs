//! The intersection lattice of a split arrangement as the lattice of flats of
//! its matroid, with its Möbius function and the Möbius and characteristic
//! polynomials.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde_json::json;

use crate::arrangement::{RankRoute, SplitMatroid};
use crate::metric::Partition;
use crate::par::{self, Strategy};
use crate::poly::{BivariatePolynomial, UnivariatePolynomial};
use crate::split::WeightedSplitSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Sorted split indices.
    pub splits: Vec<usize>,
    pub partition: Partition,
    pub rank: usize,
}

/// All flats, sorted by rank and then by split indices, ordered by containment.
/// Index 0 is the bottom `closure(∅)`, the last index is the top `closure(S)`.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    flats: Vec<Flat>,
    sets: Vec<FixedBitSet>,
    /// `moebius[x]` lists `(y, μ(x, y))` for every `y ≥ x`, by ascending `y`.
    moebius: Vec<Vec<(usize, i64)>>,
    rank: usize,
    route: RankRoute,
}

impl FlatLattice {
    pub fn new(matroid: &SplitMatroid) -> Self {
        Self::with_strategy(matroid, Strategy::default())
    }

    pub fn of_system(system: &WeightedSplitSystem) -> Self {
        Self::new(&SplitMatroid::new(system))
    }

    /// Bottom-up closure search: every flat is reached by closing a smaller
    /// flat together with one more split.
    pub fn with_strategy(matroid: &SplitMatroid, strategy: Strategy) -> Self {
        let bottom = matroid.closure(&matroid.subset([]));
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::from([(bottom.clone(), ())]);
        let mut sets = vec![bottom.clone()];
        let mut queue = VecDeque::from([bottom]);
        while let Some(flat) = queue.pop_front() {
            for k in 0..matroid.len() {
                if flat.contains(k) {
                    continue;
                }
                let mut grown = flat.clone();
                grown.insert(k);
                let closed = matroid.closure(&grown);
                if seen.insert(closed.clone(), ()).is_none() {
                    sets.push(closed.clone());
                    queue.push_back(closed);
                }
            }
        }
        let mut flats: Vec<(Flat, FixedBitSet)> = sets
            .into_iter()
            .map(|set| {
                let flat = Flat {
                    splits: set.ones().collect(),
                    partition: matroid.partition_of(&set),
                    rank: matroid.rank(&set),
                };
                (flat, set)
            })
            .collect();
        flats.sort_by(|a, b| (a.0.rank, &a.0.splits).cmp(&(b.0.rank, &b.0.splits)));
        let (flats, sets): (Vec<Flat>, Vec<FixedBitSet>) = flats.into_iter().unzip();
        let rank = flats.last().map_or(0, |f| f.rank);
        let moebius = par::map_indices(strategy, sets.len(), |x| moebius_row(&sets, x));
        Self {
            flats,
            sets,
            moebius,
            rank,
            route: matroid.route(),
        }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// `r = rk(∩A)`, which also equals the dimension of the ambient space.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn route(&self) -> RankRoute {
        self.route
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.sets[x].is_subset(&self.sets[y])
    }

    /// `μ(x, y)`, or `None` when `x ≰ y`.
    pub fn moebius(&self, x: usize, y: usize) -> Option<i64> {
        let row = &self.moebius[x];
        row.binary_search_by_key(&y, |(z, _)| *z).ok().map(|k| row[k].1)
    }

    /// All `(x, y, μ(x, y))` with `x ≤ y`.
    pub fn moebius_triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.moebius
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |(y, m)| (x, *y, *m)))
    }

    /// `M(u, v) = Σ_{x ≤ y} μ(x, y) u^{rk x} v^{r − rk y}`.
    pub fn moebius_polynomial(&self) -> BivariatePolynomial {
        let mut poly = BivariatePolynomial::default();
        for (x, y, mu) in self.moebius_triples() {
            poly.add_term(self.flats[x].rank, self.rank - self.flats[y].rank, mu);
        }
        poly
    }

    /// `χ(t) = Σ_x μ(0̂, x) t^{r − rk x}`.
    pub fn characteristic_polynomial(&self) -> UnivariatePolynomial {
        let mut poly = UnivariatePolynomial::default();
        for (y, mu) in &self.moebius[self.bottom()] {
            poly.add_term(self.rank - self.flats[*y].rank, *mu);
        }
        poly
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let flats: Vec<_> = self
            .flats
            .iter()
            .map(|f| json!({ "splits": f.splits, "rank": f.rank }))
            .collect();
        let moebius: Vec<_> = self.moebius_triples().map(|(x, y, m)| json!([x, y, m])).collect();
        json!({ "flats": flats, "moebius": moebius, "rank": self.rank })
    }
}

/// `μ(x, ·)` on the upper set of `x`, by the recursion `μ(x, y) = −Σ_{x ≤ z < y} μ(x, z)`.
/// Flats are sorted by rank, so every `z < y` precedes `y`.
fn moebius_row(sets: &[FixedBitSet], x: usize) -> Vec<(usize, i64)> {
    let mut row: Vec<(usize, i64)> = vec![(x, 1)];
    for y in x + 1..sets.len() {
        if !sets[x].is_subset(&sets[y]) {
            continue;
        }
        let sum = row
            .iter()
            .filter(|(z, _)| sets[*z].is_subset(&sets[y]))
            .try_fold(0i64, |acc, (_, m)| acc.checked_add(*m))
            .expect("Möbius value overflow");
        row.push((y, -sum));
    }
    row
}

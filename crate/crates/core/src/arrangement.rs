//! The split arrangement and its matroid.
//!
//! Every split `σ = A|B` (with `A` the side holding the first point) has the
//! normal vector `v_σ = (|B|/n)·𝟙_A − (|A|/n)·𝟙_B`; its hyperplane is `v_σ^⊥`.
//! The matroid on the splits is computed two ways: from the partition `π(S')`
//! of the points (valid for compatible systems) and by exact row reduction of
//! the normal vectors (valid for every system).

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::metric::Partition;
use crate::rational::Rational;
use crate::split::{Split, WeightedSplitSystem};

/// Endpoint `v_σ` of the segment `S_σ`; coordinates sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalVector(pub Vec<Rational>);

impl NormalVector {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

pub fn normal_vector(split: &Split) -> NormalVector {
    let n = split.ground_size();
    let b = split.side().len();
    let a = n - b;
    let on_a = Rational::new(BigInt::from(b), BigInt::from(n));
    let on_b = -Rational::new(BigInt::from(a), BigInt::from(n));
    NormalVector(
        (0..n)
            .map(|i| if split.contains(i) { on_b.clone() } else { on_a.clone() })
            .collect(),
    )
}

/// Which rank/closure rule a matroid uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankRoute {
    /// `rk(S') = |π(S')| − 1`; compatible systems only.
    Partition,
    /// Row reduction of normal vectors.
    LinearAlgebra,
}

/// The matroid `M(S)` of a split system, on the quotient by `π(S)`.
///
/// Split indices are those of the input system.
#[derive(Clone, Debug)]
pub struct SplitMatroid {
    splits: Vec<Split>,
    normals: Vec<Vec<Rational>>,
    ground_size: usize,
    compatible: bool,
    incompatible_pair: Option<(usize, usize)>,
}

impl SplitMatroid {
    pub fn new(system: &WeightedSplitSystem) -> Self {
        let partition = system.partition();
        let block_map = partition.block_map();
        let splits: Vec<Split> = system
            .splits()
            .map(|s| {
                Split::new(partition.len(), s.side().iter().map(|&i| block_map[i]))
                    .expect("every split separates two classes")
            })
            .collect();
        let normals = splits.iter().map(|s| normal_vector(s).0).collect();
        let (compatible, incompatible_pair) = system.is_compatible_system();
        Self {
            splits,
            normals,
            ground_size: partition.len(),
            compatible,
            incompatible_pair,
        }
    }

    /// Number of splits (matroid elements).
    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    /// Number of points after the quotient.
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    pub fn route(&self) -> RankRoute {
        if self.compatible {
            RankRoute::Partition
        } else {
            RankRoute::LinearAlgebra
        }
    }

    pub fn subset(&self, indices: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        set.extend(indices);
        set
    }

    pub fn full_set(&self) -> FixedBitSet {
        self.subset(0..self.len())
    }

    /// `π(S')`: points no split of `S'` separates share a block.
    pub fn partition_of(&self, subset: &FixedBitSet) -> Partition {
        Partition::from_keys(self.ground_size, |i| {
            subset.ones().map(|k| self.splits[k].contains(i)).collect::<Vec<_>>()
        })
    }

    pub fn rank_partition(&self, subset: &FixedBitSet) -> Result<usize> {
        self.require_partition_route()?;
        Ok(self.partition_of(subset).len() - 1)
    }

    pub fn rank_linalg(&self, subset: &FixedBitSet) -> usize {
        let rows: Vec<Vec<Rational>> = subset.ones().map(|k| self.normals[k].clone()).collect();
        linalg::rank(&rows)
    }

    pub fn rank(&self, subset: &FixedBitSet) -> usize {
        match self.route() {
            RankRoute::Partition => self.partition_of(subset).len() - 1,
            RankRoute::LinearAlgebra => self.rank_linalg(subset),
        }
    }

    /// Rank of the whole arrangement, `r = rk(∩A)`.
    pub fn ambient_rank(&self) -> usize {
        self.rank(&self.full_set())
    }

    /// Closure by the partition rule: every split that cuts no block of `π(S')`.
    pub fn closure_partition(&self, subset: &FixedBitSet) -> Result<FixedBitSet> {
        self.require_partition_route()?;
        Ok(self.closure_from_partition(&self.partition_of(subset)))
    }

    fn closure_from_partition(&self, partition: &Partition) -> FixedBitSet {
        self.subset((0..self.len()).filter(|&k| {
            let s = &self.splits[k];
            partition
                .blocks()
                .iter()
                .all(|b| b.iter().all(|&i| s.contains(i) == s.contains(b[0])))
        }))
    }

    /// Closure by rank: `σ ∈ cl(S')` iff adding it does not raise the linear rank.
    pub fn closure_linalg(&self, subset: &FixedBitSet) -> FixedBitSet {
        let mut basis = linalg::Basis::new(self.ground_size);
        for k in subset.ones() {
            basis.push(self.normals[k].clone(), Rational::default());
        }
        self.subset((0..self.len()).filter(|&k| {
            subset.contains(k) || {
                let mut probe = basis.clone();
                !probe.push(self.normals[k].clone(), Rational::default())
            }
        }))
    }

    pub fn closure(&self, subset: &FixedBitSet) -> FixedBitSet {
        match self.route() {
            RankRoute::Partition => self.closure_from_partition(&self.partition_of(subset)),
            RankRoute::LinearAlgebra => self.closure_linalg(subset),
        }
    }

    fn require_partition_route(&self) -> Result<()> {
        match self.incompatible_pair {
            None => Ok(()),
            Some((i, j)) => Err(Error::IncompatibleSystem(i, j)),
        }
    }
}

//! Splits, weighted split systems and the conversions between trees, split
//! systems and split metrics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Partition};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::tree::{reconstruct_tree, XTree};

/// A bipartition of `0..n`, stored by the side that does not contain point 0.
/// `A|B` and `B|A` are the same value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    ground_size: usize,
    side: Vec<usize>,
}

impl Split {
    /// Builds a split from either of its sides.
    pub fn new(ground_size: usize, side: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut member = vec![false; ground_size];
        for i in side {
            if i >= ground_size {
                return Err(Error::InvalidSplit(format!("point {i} outside 0..{ground_size}")));
            }
            member[i] = true;
        }
        let count = member.iter().filter(|&&m| m).count();
        if count == 0 || count == ground_size {
            return Err(Error::InvalidSplit("both sides must be nonempty".into()));
        }
        let flip = member[0];
        let side = (0..ground_size).filter(|&i| member[i] != flip).collect();
        Ok(Self { ground_size, side })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// The canonical side (never contains point 0).
    pub fn side(&self) -> &[usize] {
        &self.side
    }

    pub fn other_side(&self) -> Vec<usize> {
        (0..self.ground_size).filter(|i| !self.contains(*i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.side.binary_search(&i).is_ok()
    }

    /// `δ_σ(i, j) = 1`.
    pub fn separates(&self, i: usize, j: usize) -> bool {
        self.contains(i) != self.contains(j)
    }

    pub fn is_trivial(&self) -> bool {
        self.side.len() == 1 || self.side.len() + 1 == self.ground_size
    }

    pub fn display_with(&self, labels: &[String]) -> String {
        let name = |v: Vec<usize>| v.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(",");
        format!("{}|{}", name(self.other_side()), name(self.side.clone()))
    }
}

impl Ord for Split {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ground_size, self.side.len(), &self.side).cmp(&(other.ground_size, other.side.len(), &other.side))
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Split {
    /// One-based, e.g. `12|34`-style sides separated by commas.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", one_based(&self.other_side()), one_based(&self.side))
    }
}

pub fn are_compatible(a: &Split, b: &Split) -> Result<bool> {
    if a.ground_size != b.ground_size {
        return Err(Error::GroundSetMismatch(a.ground_size, b.ground_size));
    }
    // Both complements contain point 0, so one of the other three
    // intersections must be empty.
    let meet = a.side.iter().filter(|i| b.contains(**i)).count();
    Ok(meet == 0 || meet == a.side.len() || meet == b.side.len())
}

/// A set of distinct splits of the same labelled ground set with positive weights,
/// kept sorted in [`Split`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSplitSystem {
    labels: Vec<String>,
    splits: Vec<(Split, Rational)>,
}

impl WeightedSplitSystem {
    pub fn new(labels: Vec<String>, splits: Vec<(Split, Rational)>) -> Result<Self> {
        let n = labels.len();
        let mut seen: BTreeMap<Split, Rational> = BTreeMap::new();
        for (split, weight) in splits {
            if split.ground_size != n {
                return Err(Error::GroundSetMismatch(split.ground_size, n));
            }
            if !weight.is_positive() {
                return Err(Error::NonPositiveWeight(split.display_with(&labels)));
            }
            if seen.contains_key(&split) {
                return Err(Error::DuplicateSplit(split.display_with(&labels)));
            }
            seen.insert(split, weight);
        }
        Ok(Self {
            labels,
            splits: seen.into_iter().collect(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn splits(&self) -> impl ExactSizeIterator<Item = &Split> {
        self.splits.iter().map(|(s, _)| s)
    }

    pub fn weighted(&self) -> &[(Split, Rational)] {
        &self.splits
    }

    pub fn split(&self, index: usize) -> &Split {
        &self.splits[index].0
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.splits[index].1
    }

    /// Same splits, weights replaced by `f(index, weight)`.
    pub fn reweighted(&self, mut f: impl FnMut(usize, &Rational) -> Rational) -> Result<Self> {
        let splits = self
            .splits
            .iter()
            .enumerate()
            .map(|(k, (s, w))| (s.clone(), f(k, w)))
            .collect();
        Self::new(self.labels.clone(), splits)
    }

    /// Pairwise compatibility; the witness is the first crossing pair of split indices.
    pub fn is_compatible_system(&self) -> (bool, Option<(usize, usize)>) {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !are_compatible(self.split(i), self.split(j)).expect("same ground set") {
                    return (false, Some((i, j)));
                }
            }
        }
        (true, None)
    }

    pub fn require_compatible(&self) -> Result<()> {
        match self.is_compatible_system() {
            (true, _) => Ok(()),
            (false, Some((i, j))) => Err(Error::IncompatibleSystem(i, j)),
            (false, None) => unreachable!(),
        }
    }

    /// `π(S)`: points are equivalent when no split separates them.
    pub fn partition(&self) -> Partition {
        let splits: Vec<&Split> = self.splits().collect();
        Partition::from_keys(self.ground_size(), |i| {
            splits.iter().map(|s| s.contains(i)).collect::<Vec<_>>()
        })
    }

    /// The same system on the classes of `π(S)`, with labels joined by `+`.
    pub fn quotient(&self) -> (WeightedSplitSystem, Partition) {
        let partition = self.partition();
        if partition.is_discrete() {
            return (self.clone(), partition);
        }
        let block_map = partition.block_map();
        let labels = partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join("+"))
            .collect();
        let splits = self
            .splits
            .iter()
            .map(|(s, w)| {
                let mut side: Vec<usize> = s.side.iter().map(|&i| block_map[i]).collect();
                side.dedup();
                (
                    Split::new(partition.len(), side).expect("split separates classes"),
                    w.clone(),
                )
            })
            .collect();
        let system = WeightedSplitSystem::new(labels, splits).expect("quotient keeps splits distinct");
        (system, partition)
    }

    /// Parses `{"labels": [...], "splits": [{"side": [...], "weight": "p/q"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SplitSystemDoc = serde_json::from_str(text).map_err(|e| Error::SplitFormat(e.to_string()))?;
        let index: HashMap<&str, usize> = doc.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != doc.labels.len() {
            return Err(Error::SplitFormat("duplicate labels".into()));
        }
        let mut splits = Vec::with_capacity(doc.splits.len());
        for entry in &doc.splits {
            let side = entry
                .side
                .iter()
                .map(|l| {
                    index
                        .get(l.as_str())
                        .copied()
                        .ok_or_else(|| Error::SplitFormat(format!("unknown label {l:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let weight = match &entry.weight {
                WeightText::Text(s) => parse_rational(s)?,
                WeightText::Integer(i) => Rational::from_integer((*i).into()),
                WeightText::Other(_) => {
                    return Err(Error::SplitFormat(
                        "weights must be integers or strings such as \"3/4\"".into(),
                    ))
                }
            };
            splits.push((Split::new(doc.labels.len(), side)?, weight));
        }
        Self::new(doc.labels, splits)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let splits: Vec<serde_json::Value> = self
            .splits
            .iter()
            .map(|(s, w)| {
                serde_json::json!({
                    "side": s.side.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>(),
                    "weight": format_rational(w),
                })
            })
            .collect();
        serde_json::json!({ "labels": self.labels, "splits": splits })
    }
}

#[derive(Deserialize)]
struct SplitSystemDoc {
    labels: Vec<String>,
    splits: Vec<SplitDoc>,
}

#[derive(Deserialize)]
struct SplitDoc {
    side: Vec<String>,
    weight: WeightText,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightText {
    Integer(i64),
    Text(String),
    Other(serde::de::IgnoredAny),
}

/// One split per edge: the labels beyond the edge as seen from the first point.
pub fn tree_to_splits(tree: &XTree) -> Result<WeightedSplitSystem> {
    let n = tree.labels().len();
    let adj = tree.adjacency();
    let mut labels_at: Vec<Vec<usize>> = vec![Vec::new(); tree.vertex_count()];
    for (i, &v) in tree.placement().iter().enumerate() {
        labels_at[v].push(i);
    }
    // iterative DFS from the vertex of point 0, collecting subtree label sets
    let root = tree.placement()[0];
    let mut order = Vec::with_capacity(tree.vertex_count());
    let mut parent_edge: Vec<Option<(usize, usize)>> = vec![None; tree.vertex_count()];
    let mut visited = vec![false; tree.vertex_count()];
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(u, k) in &adj[v] {
            if !visited[u] {
                visited[u] = true;
                parent_edge[u] = Some((v, k));
                stack.push(u);
            }
        }
    }
    let mut below: Vec<Vec<usize>> = labels_at;
    let mut splits = Vec::with_capacity(tree.edges().len());
    for &v in order.iter().rev() {
        if let Some((p, k)) = parent_edge[v] {
            let side = std::mem::take(&mut below[v]);
            if side.is_empty() || side.len() == n {
                return Err(Error::InvalidTree(format!("edge {k} separates no points")));
            }
            splits.push((Split::new(n, side.iter().copied())?, tree.edges()[k].weight.clone()));
            below[p].extend(side);
        }
    }
    WeightedSplitSystem::new(tree.labels().to_vec(), splits)
}

/// `d(x, y) = Σ α_σ δ_σ(x, y)`.
pub fn split_metric(system: &WeightedSplitSystem) -> DistanceMatrix {
    DistanceMatrix::from_fn(system.labels.clone(), |i, j| {
        system
            .splits
            .iter()
            .filter(|(s, _)| s.separates(i, j))
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    })
    .expect("labels already validated")
}

/// The unique compatible positively weighted split system whose split metric is `m`.
pub fn decompose(m: &DistanceMatrix) -> Result<WeightedSplitSystem> {
    tree_to_splits(&reconstruct_tree(m)?)
}

//! Distance matrices, (pseudo)metric validation, the four point condition and
//! the quotient by zero-distance classes.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A square matrix of exact distances between labelled points.
///
/// Construction only checks the shape. Symmetry, the zero diagonal and the
/// triangle inequality are reported by [`validate`], never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<Rational>>,
}

impl DistanceMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::MatrixFormat {
                line: 0,
                message: format!("expected a {n}x{n} matrix"),
            });
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::MatrixFormat {
                line: 0,
                message: format!("duplicate label {dup:?}"),
            });
        }
        Ok(Self { labels, entries })
    }

    /// Builds a symmetric matrix from a distance function on index pairs `i < j`.
    pub fn from_fn(labels: Vec<String>, mut dist: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let n = labels.len();
        let upper: Vec<Vec<Rational>> = (0..n).map(|i| (i + 1..n).map(|j| dist(i, j)).collect()).collect();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        Ordering::Less => upper[i][j - i - 1].clone(),
                        Ordering::Equal => Rational::zero(),
                        Ordering::Greater => upper[j][i - j - 1].clone(),
                    })
                    .collect()
            })
            .collect();
        Self::new(labels, entries)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// Entrywise sum of two matrices on the same labels.
    pub fn sum(&self, other: &DistanceMatrix) -> Result<DistanceMatrix> {
        if self.labels != other.labels {
            return Err(Error::GroundSetMismatch(self.len(), other.len()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self {
            labels: self.labels.clone(),
            entries,
        })
    }

    /// Parses the exact PHYLIP-like text format: a count line, then one
    /// `label v1 ... vn` line per point.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, message: String| Error::MatrixFormat { line, message };
        let (first_line, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| err(first_line, format!("expected point count, found {header:?}")))?;
        let mut labels = Vec::with_capacity(n);
        let mut entries = Vec::with_capacity(n);
        for row in 0..n {
            let (line, content) = lines
                .next()
                .ok_or_else(|| err(first_line, format!("expected {n} rows, found {row}")))?;
            let mut fields = content.split_whitespace();
            let label = fields.next().expect("non-empty line");
            let values = fields
                .map(|f| parse_rational(f).map_err(|e| err(line, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != n {
                return Err(err(line, format!("expected {n} values, found {}", values.len())));
            }
            labels.push(label.to_string());
            entries.push(values);
        }
        if let Some((line, extra)) = lines.next() {
            return Err(err(line, format!("unexpected trailing content {extra:?}")));
        }
        Self::new(labels, entries).map_err(|e| match e {
            Error::MatrixFormat { message, .. } => err(first_line, message),
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for (label, row) in self.labels.iter().zip(&self.entries) {
            out.push_str(label);
            for v in row {
                let _ = write!(out, " {}", format_rational(v));
            }
            out.push('\n');
        }
        out
    }

    /// Index of the first pair `i < j` at distance zero, if any.
    pub fn first_zero_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.entries[i][j].is_zero())
    }

    pub(crate) fn require_pseudometric(&self) -> Result<()> {
        let report = validate(self);
        if report.is_pseudometric() {
            Ok(())
        } else {
            Err(Error::NotAPseudometric(report.describe_failure()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudometricReport {
    pub is_symmetric: bool,
    pub zero_diagonal: bool,
    pub triangle_ok: bool,
    /// `(i, j, k)` with `d(i,j) > d(i,k) + d(k,j)`.
    pub triangle_witness: Option<[usize; 3]>,
    pub separates_points: bool,
    pub four_point: bool,
    pub four_point_witness: Option<[usize; 4]>,
}

impl PseudometricReport {
    pub fn is_pseudometric(&self) -> bool {
        self.is_symmetric && self.zero_diagonal && self.triangle_ok
    }

    pub fn is_metric(&self) -> bool {
        self.is_pseudometric() && self.separates_points
    }

    fn describe_failure(&self) -> String {
        if !self.is_symmetric {
            "matrix is not symmetric".into()
        } else if !self.zero_diagonal {
            "diagonal is not zero".into()
        } else if let Some([i, j, k]) = self.triangle_witness {
            format!("triangle inequality fails for ({i}, {j}, {k})")
        } else {
            "ok".into()
        }
    }
}

/// Exhaustive check of every (pseudo)metric axiom plus the four point condition.
pub fn validate(m: &DistanceMatrix) -> PseudometricReport {
    let n = m.len();
    let d = |i: usize, j: usize| &m.entries[i][j];
    let is_symmetric = (0..n).all(|i| (0..i).all(|j| d(i, j) == d(j, i)));
    let zero_diagonal = (0..n).all(|i| d(i, i).is_zero());
    let triangle_witness = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k])))
        .find(|&[i, j, k]| d(i, j) > &(d(i, k) + d(k, j)));
    let separates_points = (0..n).all(|i| (0..n).all(|j| i == j || d(i, j).is_positive()));
    let (four_point, four_point_witness) = four_point_check(m);
    PseudometricReport {
        is_symmetric,
        zero_diagonal,
        triangle_ok: triangle_witness.is_none(),
        triangle_witness,
        separates_points,
        four_point,
        four_point_witness,
    }
}

/// Checks `d(x,y) + d(z,w) <= max(d(x,z) + d(y,w), d(x,w) + d(z,y))` over all
/// quadruples, repeats included. Returns the lexicographically first violation.
pub fn four_point_check(m: &DistanceMatrix) -> (bool, Option<[usize; 4]>) {
    let n = m.len();
    let d = |i: usize, j: usize| &m.entries[i][j];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = d(x, y) + d(z, w);
                    let a = d(x, z) + d(y, w);
                    let b = d(x, w) + d(z, y);
                    if lhs > a && lhs > b {
                        return (false, Some([x, y, z, w]));
                    }
                }
            }
        }
    }
    (true, None)
}

/// A set partition of `0..n` with blocks sorted internally and by minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Groups `0..n` by a key; points with equal keys share a block.
    pub fn from_keys<K: Eq + std::hash::Hash>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut index: std::collections::HashMap<K, usize> = Default::default();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let next = blocks.len();
            let b = *index.entry(key(i)).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(i);
        }
        Self { blocks }
    }

    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidSplit("empty partition block".into()));
        }
        blocks.sort();
        let mut all: Vec<usize> = blocks.concat();
        all.sort_unstable();
        if all.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidSplit("blocks do not partition 0..n".into()));
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Block index of every point.
    pub fn block_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.ground_size()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                map[i] = b;
            }
        }
        map
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let map = coarser.block_map();
        self.blocks.iter().all(|b| b.iter().all(|&i| map[i] == map[b[0]]))
    }
}

/// Collapses zero-distance classes. Returns the induced metric on the classes
/// (labels joined with `+`) and the partition into classes.
pub fn zero_quotient(m: &DistanceMatrix) -> Result<(DistanceMatrix, Partition)> {
    m.require_pseudometric()?;
    let n = m.len();
    // Zero distance is an equivalence relation for pseudometrics, so the first
    // point at distance zero is a valid class representative.
    let partition = Partition::from_keys(n, |i| (0..n).find(|&j| m.get(i, j).is_zero()));
    if partition.is_discrete() {
        return Ok((m.clone(), partition));
    }
    let blocks = partition.blocks();
    let labels = blocks
        .iter()
        .map(|b| b.iter().map(|&i| m.labels[i].as_str()).collect::<Vec<_>>().join("+"))
        .collect();
    let quotient = DistanceMatrix::from_fn(labels, |a, b| m.get(blocks[a][0], blocks[b][0]).clone())?;
    Ok((quotient, partition))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::int;

    pub(crate) fn matrix(rows: &[&[i64]]) -> DistanceMatrix {
        let labels = (1..=rows.len()).map(|i| format!("x{i}")).collect();
        let entries = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        DistanceMatrix::new(labels, entries).unwrap()
    }

    fn cycle4() -> DistanceMatrix {
        matrix(&[&[0, 1, 2, 1], &[1, 0, 1, 2], &[2, 1, 0, 1], &[1, 2, 1, 0]])
    }

    #[test]
    fn equilateral_metric_passes_everything() {
        let r = validate(&matrix(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        assert!(r.is_metric());
        assert!(r.four_point);
        assert_eq!(r.triangle_witness, None);
    }

    #[test]
    fn triangle_violation_has_first_witness() {
        let r = validate(&matrix(&[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]]));
        assert!(!r.triangle_ok);
        assert_eq!(r.triangle_witness, Some([0, 2, 1]));
    }

    #[test]
    fn asymmetric_and_nonzero_diagonal_detected() {
        let r = validate(&matrix(&[&[0, 1], &[2, 0]]));
        assert!(!r.is_symmetric);
        let r = validate(&matrix(&[&[1, 1], &[1, 0]]));
        assert!(!r.zero_diagonal);
        assert!(!r.is_pseudometric());
    }

    #[test]
    fn quartet_trees_satisfy_four_point() {
        let unit = matrix(&[&[0, 2, 3, 3], &[2, 0, 3, 3], &[3, 3, 0, 2], &[3, 3, 2, 0]]);
        assert!(validate(&unit).four_point);
        let skewed = matrix(&[&[0, 2, 3, 4], &[2, 0, 3, 4], &[3, 3, 0, 2], &[4, 4, 2, 0]]);
        assert!(validate(&skewed).four_point);
    }

    #[test]
    fn cycle_metric_violates_four_point() {
        let (holds, witness) = four_point_check(&cycle4());
        assert!(!holds);
        assert_eq!(witness, Some([0, 2, 1, 3]));
    }

    #[test]
    fn small_metrics_always_satisfy_four_point() {
        let m = matrix(&[&[0, 2, 3], &[2, 0, 3], &[3, 3, 0]]);
        assert!(four_point_check(&m).0);
    }

    #[test]
    fn quotient_of_metric_is_identity() {
        let m = cycle4();
        let (q, p) = zero_quotient(&m).unwrap();
        assert_eq!(q, m);
        assert!(p.is_discrete());
    }

    #[test]
    fn quotient_merges_zero_pairs() {
        let m = matrix(&[&[0, 0, 5], &[0, 0, 5], &[5, 5, 0]]);
        let (q, p) = zero_quotient(&m).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.get(0, 1), &int(5));
        assert_eq!(q.labels()[0], "x1+x2");
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn quotient_of_zero_pseudometric_is_a_point() {
        let m = matrix(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let (q, p) = zero_quotient(&m).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn quotient_rejects_non_pseudometric() {
        let m = matrix(&[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]]);
        assert!(matches!(zero_quotient(&m), Err(Error::NotAPseudometric(_))));
    }

    #[test]
    fn parses_matrix_file() {
        let text = "3\na 0 1/2 0.5\nb 1/2 0 1\nc 0.5 1 0\n";
        let m = DistanceMatrix::parse(text).unwrap();
        assert_eq!(m.labels(), &["a", "b", "c"]);
        assert_eq!(DistanceMatrix::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn matrix_parse_errors_carry_lines() {
        let err = DistanceMatrix::parse("2\na 0 1\nb 1\n").unwrap_err();
        assert!(matches!(err, Error::MatrixFormat { line: 3, .. }), "{err:?}");
        let err = DistanceMatrix::parse("2\na 0 x\nb 1 0\n").unwrap_err();
        assert!(matches!(err, Error::MatrixFormat { line: 2, .. }));
        assert!(DistanceMatrix::parse("two\n").is_err());
        assert!(DistanceMatrix::parse("1\na 0\nb\n").is_err());
    }

    #[test]
    fn partition_refinement() {
        let fine = Partition::discrete(3);
        let coarse = Partition::from_blocks(vec![vec![2, 0], vec![1]]).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert_eq!(coarse.blocks(), &[vec![0, 2], vec![1]]);
    }
}

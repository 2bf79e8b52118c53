//! Edge-weighted X-trees: path-length metrics, exact reconstruction from a
//! tree-like distance matrix, and Newick output.

use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::metric::{four_point_check, zero_quotient, DistanceMatrix};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: Rational,
}

/// A tree with positive edge weights and a labelling of points onto vertices
/// that covers every vertex of degree at most two. Trees are unrooted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XTree {
    labels: Vec<String>,
    placement: Vec<usize>,
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl XTree {
    /// Validates the X-tree conditions. `placement[i]` is the vertex carrying `labels[i]`.
    pub fn new(labels: Vec<String>, placement: Vec<usize>, vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidTree(msg));
        if labels.is_empty() {
            return invalid("no labelled points".into());
        }
        if labels.len() != placement.len() {
            return invalid("every label needs exactly one vertex".into());
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return invalid(format!("duplicate label {dup:?}"));
        }
        if let Some(&v) = placement.iter().find(|&&v| v >= vertex_count) {
            return invalid(format!("label placed on missing vertex {v}"));
        }
        if edges.len() + 1 != vertex_count {
            return invalid(format!(
                "{} edges on {vertex_count} vertices is not a tree",
                edges.len()
            ));
        }
        for e in &edges {
            if e.a >= vertex_count || e.b >= vertex_count || e.a == e.b {
                return invalid(format!("bad edge {}-{}", e.a, e.b));
            }
            if !e.weight.is_positive() {
                return invalid(format!(
                    "edge {}-{} has nonpositive weight {}",
                    e.a,
                    e.b,
                    format_rational(&e.weight)
                ));
            }
        }
        let tree = Self {
            labels,
            placement,
            vertex_count,
            edges,
        };
        let reached = tree.distances_from(0).iter().filter(|d| d.is_some()).count();
        if reached != vertex_count {
            return invalid("graph is not connected".into());
        }
        let degree = tree.degrees();
        let labelled: HashSet<usize> = tree.placement.iter().copied().collect();
        if let Some(v) = (0..vertex_count).find(|v| degree[*v] <= 2 && !labelled.contains(v)) {
            return invalid(format!("unlabelled vertex {v} has degree {}", degree[v]));
        }
        Ok(tree)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut degree = vec![0; self.vertex_count];
        for e in &self.edges {
            degree[e.a] += 1;
            degree[e.b] += 1;
        }
        degree
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, k));
            adj[e.b].push((e.a, k));
        }
        adj
    }

    fn distances_from(&self, source: usize) -> Vec<Option<Rational>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(Rational::zero());
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let here = dist[v].clone().expect("visited");
            for &(u, k) in &adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(&here + &self.edges[k].weight);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Newick text rooted at the vertex of the first point. Extra labels on a
    /// shared vertex are written as zero-length pendant leaves.
    pub fn to_newick(&self) -> String {
        let adj = self.adjacency();
        let mut names: Vec<Vec<&str>> = vec![Vec::new(); self.vertex_count];
        for (label, &v) in self.labels.iter().zip(&self.placement) {
            names[v].push(label);
        }
        let mut out = String::new();
        self.write_newick(self.placement[0], None, &adj, &names, &mut out);
        out.push(';');
        out
    }

    fn write_newick(
        &self,
        v: usize,
        parent: Option<usize>,
        adj: &[Vec<(usize, usize)>],
        names: &[Vec<&str>],
        out: &mut String,
    ) {
        let mut children: Vec<String> = Vec::new();
        for &(u, k) in &adj[v] {
            if Some(u) == parent {
                continue;
            }
            let mut sub = String::new();
            self.write_newick(u, Some(v), adj, names, &mut sub);
            sub.push(':');
            sub.push_str(&format_rational(&self.edges[k].weight));
            children.push(sub);
        }
        let (own, extra) = match names[v].split_first() {
            Some((first, rest)) => (quote_label(first), rest),
            None => (String::new(), &[][..]),
        };
        children.extend(extra.iter().map(|l| format!("{}:0", quote_label(l))));
        if !children.is_empty() {
            out.push('(');
            out.push_str(&children.join(","));
            out.push(')');
        }
        out.push_str(&own);
    }
}

fn quote_label(label: &str) -> String {
    if label.chars().any(|c| c.is_whitespace() || "()[]':;,".contains(c)) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

/// Path-length (pseudo)metric of a weighted X-tree.
pub fn tree_to_metric(tree: &XTree) -> DistanceMatrix {
    let n = tree.labels.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let dist = tree.distances_from(tree.placement[i]);
        rows.push(
            (0..n)
                .map(|j| dist[tree.placement[j]].clone().expect("tree is connected"))
                .collect(),
        );
    }
    DistanceMatrix::new(tree.labels.clone(), rows).expect("labels already validated")
}

/// Mutable tree used while inserting points one at a time.
struct Builder {
    adj: Vec<Vec<(usize, Rational)>>,
}

impl Builder {
    fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn link(&mut self, a: usize, b: usize, w: Rational) {
        self.adj[a].push((b, w.clone()));
        self.adj[b].push((a, w));
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|(u, _)| *u != b);
        self.adj[b].retain(|(u, _)| *u != a);
    }

    /// Vertices along the unique path `from -> to`, each paired with the weight
    /// of the edge to its successor (zero for the last vertex).
    fn path(&self, from: usize, to: usize) -> Vec<(usize, Rational)> {
        let mut parent: Vec<Option<(usize, Rational)>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for (u, w) in &self.adj[v] {
                if !seen[*u] {
                    seen[*u] = true;
                    parent[*u] = Some((v, w.clone()));
                    queue.push_back(*u);
                }
            }
        }
        let mut path = vec![(to, Rational::zero())];
        let mut v = to;
        while let Some((p, w)) = parent[v].clone() {
            path.push((p, w));
            v = p;
        }
        path.reverse();
        path
    }

    /// The vertex at distance `offset` from `from` towards `to`, subdividing an edge if needed.
    fn point_on_path(&mut self, from: usize, to: usize, offset: &Rational) -> usize {
        let path = self.path(from, to);
        let mut walked = Rational::zero();
        for (k, (v, w)) in path.iter().enumerate() {
            if &walked == offset {
                return *v;
            }
            let next = &walked + w;
            if &next > offset {
                let succ = path[k + 1].0;
                let mid = self.add_vertex();
                self.unlink(*v, succ);
                self.link(*v, mid, offset - &walked);
                self.link(mid, succ, &next - offset);
                return mid;
            }
            walked = next;
        }
        unreachable!("offset lies beyond the end of the path")
    }
}

/// Reconstructs the unique minimal X-tree realizing a tree-like pseudometric.
///
/// Zero-distance points share a vertex. Remaining points are inserted in index
/// order: the attachment point of `z` lies on the path from the first point `x`
/// to the placed point `y` maximizing the Gromov product
/// `(d(x,z) + d(x,y) - d(y,z)) / 2`, at exactly that distance from `x`.
pub fn reconstruct_tree(m: &DistanceMatrix) -> Result<XTree> {
    if m.is_empty() {
        return Err(Error::TooFewPoints(1));
    }
    let (quotient, partition) = zero_quotient(m)?;
    if let (false, Some(w)) = four_point_check(m) {
        return Err(Error::FourPointViolation(w));
    }
    let k = quotient.len();
    let d = |i: usize, j: usize| quotient.get(i, j);
    let mut builder = Builder { adj: Vec::new() };
    let mut vertex_of = vec![0usize; k];
    vertex_of[0] = builder.add_vertex();
    if k > 1 {
        vertex_of[1] = builder.add_vertex();
        builder.link(vertex_of[0], vertex_of[1], d(0, 1).clone());
    }
    let two = Rational::from_integer(2.into());
    for z in 2..k {
        let (best, gromov) = (1..z)
            .map(|y| (y, (d(0, z) + d(0, y) - d(y, z)) / &two))
            .fold(None::<(usize, Rational)>, |acc, (y, g)| match acc {
                Some((_, ref bg)) if bg >= &g => acc,
                _ => Some((y, g)),
            })
            .expect("at least one placed point");
        let anchor = builder.point_on_path(vertex_of[0], vertex_of[best], &gromov);
        let leg = d(0, z) - &gromov;
        vertex_of[z] = if leg.is_zero() {
            anchor
        } else {
            let v = builder.add_vertex();
            builder.link(anchor, v, leg);
            v
        };
    }
    let mut edges = Vec::new();
    for (a, nbrs) in builder.adj.iter().enumerate() {
        for (b, w) in nbrs {
            if a < *b {
                edges.push(Edge {
                    a,
                    b: *b,
                    weight: w.clone(),
                });
            }
        }
    }
    let block_map = partition.block_map();
    let placement = (0..m.len()).map(|i| vertex_of[block_map[i]]).collect();
    let tree = XTree::new(m.labels().to_vec(), placement, builder.adj.len(), edges)?;
    if &tree_to_metric(&tree) != m {
        // only reachable if the four point check and the insertion disagree
        return Err(Error::InvalidTree(
            "reconstruction does not reproduce the metric".into(),
        ));
    }
    Ok(tree)
}

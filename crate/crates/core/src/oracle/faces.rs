use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, Vector};
use crate::rational::format_rational;

/// A face as the indices of its vertices together with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: isize,
}

/// All faces of a polytope, from the empty face up to the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    vertices: Vec<Vector>,
    facets: Vec<Vec<usize>>,
    faces: Vec<Face>,
    dim: usize,
}

impl FaceLattice {
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Faces sorted by dimension, then by vertex set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[f₋₁, f₀, …, f_m]`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dim + 2];
        for face in &self.faces {
            counts[(face.dim + 1) as usize] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.dim.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let point = |v: &Vector| v.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().map(point).collect::<Vec<_>>(),
            "facets": self.facets,
            "faces": self.faces.iter().map(|f| json!({"dim": f.dim, "vertices": f.vertices})).collect::<Vec<_>>(),
            "f_vector": self.f_vector(),
        })
    }
}

/// Closes the facet tight sets under intersection and grades every face by
/// the affine dimension of its vertices.
pub fn face_lattice(vertices: Vec<Vector>, facets: Vec<Vec<usize>>) -> Result<FaceLattice> {
    let n = vertices.len();
    if n == 0 {
        return Err(Error::InconsistentIncidence("no vertices".into()));
    }
    let dim = affine_dimension(&vertices) as usize;
    let facets: Vec<Vec<usize>> = facets
        .into_iter()
        .map(|mut f| {
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if facets.iter().flatten().any(|&v| v >= n) {
        return Err(Error::InconsistentIncidence("facet refers to a missing vertex".into()));
    }
    let sets: Vec<FixedBitSet> = facets.iter().map(|f| bitset(n, f)).collect();

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
    let top = bitset(n, &(0..n).collect::<Vec<_>>());
    for set in std::iter::once(top).chain(sets.iter().cloned()) {
        if seen.insert(set.ones().collect()) {
            queue.push_back(set);
        }
    }
    seen.insert(Vec::new());
    while let Some(face) = queue.pop_front() {
        for facet in &sets {
            let mut meet = face.clone();
            meet.intersect_with(facet);
            if seen.insert(meet.ones().collect()) {
                queue.push_back(meet);
            }
        }
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|vs| {
            let points: Vec<&Vector> = vs.iter().map(|&i| &vertices[i]).collect();
            let dim = affine_dimension(&points);
            Face { vertices: vs, dim }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));

    for (k, f) in facets.iter().enumerate() {
        let d = faces.iter().find(|face| &face.vertices == f).map(|face| face.dim);
        if dim > 0 && d != Some(dim as isize - 1) {
            return Err(Error::InconsistentIncidence(format!(
                "facet {k} is not of codimension one"
            )));
        }
    }
    for face in &faces {
        if face.dim == 0 && face.vertices.len() != 1 {
            return Err(Error::InconsistentIncidence(
                "a vertex face contains several points".into(),
            ));
        }
    }
    if faces.iter().filter(|f| f.dim == 0).count() != n {
        return Err(Error::InconsistentIncidence(
            "some vertex is not cut out by facets".into(),
        ));
    }
    let lattice = FaceLattice {
        vertices,
        facets,
        faces,
        dim,
    };
    if lattice.euler_characteristic() != 0 {
        return Err(Error::InconsistentIncidence(
            "Euler characteristic does not vanish".into(),
        ));
    }
    Ok(lattice)
}

fn bitset(n: usize, members: &[usize]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(n);
    for &i in members {
        set.insert(i);
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn segment_and_point() {
        let seg = face_lattice(vec![v(&[0]), v(&[1])], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(seg.f_vector(), vec![1, 2, 1]);
        let point = face_lattice(vec![v(&[3, 3])], vec![]).unwrap();
        assert_eq!(point.f_vector(), vec![1, 1]);
    }

    #[test]
    fn square() {
        let verts = vec![v(&[0, 0]), v(&[1, 0]), v(&[1, 1]), v(&[0, 1])];
        let lattice = face_lattice(verts, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        assert_eq!(lattice.f_vector(), vec![1, 4, 4, 1]);
        assert_eq!(lattice.faces()[0].vertices, Vec::<usize>::new());
        assert_eq!(lattice.faces().last().unwrap().vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn tetrahedron_faces() {
        let verts = vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let facets = (0..4).map(|skip| (0..4).filter(|&i| i != skip).collect()).collect();
        assert_eq!(face_lattice(verts, facets).unwrap().f_vector(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn inconsistent_inputs() {
        let verts = vec![v(&[0, 0]), v(&[1, 0]), v(&[1, 1]), v(&[0, 1])];
        assert!(face_lattice(verts.clone(), vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(face_lattice(verts.clone(), vec![vec![0, 2], vec![1, 3]]).is_err());
        assert!(face_lattice(verts, vec![vec![0, 7]]).is_err());
    }
}

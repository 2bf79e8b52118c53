//! Brute-force ground truth for face numbers, independent of the lattice
//! formulas: the Lipschitz polytope from its inequalities, the fundamental
//! polytope from its generators, face lattices from vertex–facet incidences.

mod chart;
mod faces;
mod hrep;
mod minkowski;
mod sweep;
mod vrep;

pub use chart::Chart;
pub use faces::{face_lattice, Face, FaceLattice};
pub use hrep::{lip_h_rep, vertex_enumeration, HPolytope};
pub use minkowski::{lift_from_quotient, minkowski_check, signed_sums};
pub use vrep::{facet_enumeration, fundamental_v_rep, vertex_indices, Facet, VPolytope};

use crate::error::Result;
use crate::linalg::{affine_dimension, Vector};
use crate::metric::DistanceMatrix;
use crate::par::Strategy;

/// Face lattice of an H-polytope: its facets are the inequalities whose tight
/// vertices span a hyperplane of the polytope.
pub fn h_face_lattice(p: &HPolytope, strategy: Strategy) -> Result<FaceLattice> {
    let vertices = vertex_enumeration(p, strategy)?;
    let dim = affine_dimension(&vertices);
    let facets: Vec<Vec<usize>> = if dim <= 0 {
        Vec::new()
    } else {
        (0..p.inequalities.len())
            .map(|k| {
                let (a, b) = &p.inequalities[k];
                (0..vertices.len())
                    .filter(|&i| &crate::linalg::dot(a, &vertices[i]) == b)
                    .collect::<Vec<_>>()
            })
            .filter(|tight| {
                let points: Vec<&Vector> = tight.iter().map(|&i| &vertices[i]).collect();
                affine_dimension(&points) == dim - 1
            })
            .collect()
    };
    face_lattice(vertices, facets)
}

/// Face lattice of a V-polytope, with non-vertex generators dropped.
pub fn v_face_lattice(p: &VPolytope, strategy: Strategy) -> Result<FaceLattice> {
    let facets = facet_enumeration(p, strategy)?;
    let keep = vertex_indices(p, &facets);
    let mut index = vec![usize::MAX; p.points.len()];
    for (new, &old) in keep.iter().enumerate() {
        index[old] = new;
    }
    let vertices = keep.iter().map(|&i| p.points[i].clone()).collect();
    let tight = facets
        .iter()
        .map(|f| {
            f.tight
                .iter()
                .filter(|&&i| index[i] != usize::MAX)
                .map(|&i| index[i])
                .collect()
        })
        .collect();
    face_lattice(vertices, tight)
}

/// Face lattice of the Lipschitz polytope of a pseudometric, computed on its zero-quotient.
pub fn lipschitz_face_lattice(m: &DistanceMatrix, strategy: Strategy) -> Result<FaceLattice> {
    m.require_pseudometric()?;
    h_face_lattice(&lip_h_rep(m)?, strategy)
}

/// Face lattice of the fundamental polytope of a metric.
pub fn fundamental_face_lattice(m: &DistanceMatrix, strategy: Strategy) -> Result<FaceLattice> {
    v_face_lattice(&fundamental_v_rep(m)?, strategy)
}

/// Vertices of the Lipschitz polytope as sum-zero functions on all points.
pub fn lipschitz_vertices(m: &DistanceMatrix, strategy: Strategy) -> Result<Vec<Vector>> {
    m.require_pseudometric()?;
    let (p, partition) = hrep::lip_h_rep_with_partition(m)?;
    let mut lifted: Vec<Vector> = vertex_enumeration(&p, strategy)?
        .iter()
        .map(|y| lift_from_quotient(&partition, y))
        .collect();
    lifted.sort();
    Ok(lifted)
}

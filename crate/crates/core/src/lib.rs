//! Exact split decompositions, split arrangements and f-vectors of the
//! fundamental and Lipschitz polytopes of tree-like (pseudo)metric spaces.

pub mod arrangement;
pub mod corpus;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod metric;
pub mod newick;
pub mod oracle;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod split;
pub mod tree;

pub use arrangement::{normal_vector, NormalVector, RankRoute, SplitMatroid};
pub use enumeration::{
    arrangement_f_polynomial, dualize_f, fundamental_f_polynomial, lipschitz_f_polynomial, region_count, FVector,
    PolytopeKind,
};
pub use error::{Error, Result};
pub use lattice::{Flat, FlatLattice};
pub use metric::{four_point_check, validate, zero_quotient, DistanceMatrix, Partition, PseudometricReport};
pub use newick::parse_newick;
pub use oracle::{fundamental_face_lattice, lipschitz_face_lattice, FaceLattice, HPolytope, VPolytope};
pub use par::Strategy;
pub use pipeline::{compare, Comparison};
pub use poly::{BivariatePolynomial, UnivariatePolynomial};
pub use rational::{format_rational, parse_rational, Rational};
pub use split::{are_compatible, decompose, split_metric, tree_to_splits, Split, WeightedSplitSystem};
pub use tree::{reconstruct_tree, tree_to_metric, Edge, XTree};

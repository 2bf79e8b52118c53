//! Face numbers from the intersection lattice: the arrangement's f-polynomial
//! by Zaslavsky's theorem, and the f-polynomials of the Lipschitz and
//! fundamental polytopes of a tree-like space.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::metric::{validate, DistanceMatrix};
use crate::poly::UnivariatePolynomial;
use crate::split::{decompose, WeightedSplitSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolytopeKind {
    Arrangement,
    Lipschitz,
    Fundamental,
}

impl PolytopeKind {
    pub fn name(self) -> &'static str {
        match self {
            PolytopeKind::Arrangement => "arrangement",
            PolytopeKind::Lipschitz => "lipschitz",
            PolytopeKind::Fundamental => "fundamental",
        }
    }
}

impl fmt::Display for PolytopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Face counts by dimension.
///
/// For polytopes `counts = [f₋₁, f₀, …, f_m]`; for arrangements
/// `counts = [f₀, …, f_m]`. Either way the f-polynomial has the counts as its
/// coefficients from the leading term down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    pub kind: PolytopeKind,
    pub dim: usize,
    pub counts: Vec<u64>,
}

impl FVector {
    pub fn new(kind: PolytopeKind, dim: usize, counts: Vec<u64>) -> Self {
        let expected = match kind {
            PolytopeKind::Arrangement => dim + 1,
            _ => dim + 2,
        };
        assert_eq!(counts.len(), expected, "f-vector length does not match dimension");
        Self { kind, dim, counts }
    }

    /// Reads `f^P(t)` with the leading coefficient `f₋₁` (or `f₀` for arrangements) at degree `top`.
    fn from_polynomial(kind: PolytopeKind, dim: usize, top: usize, poly: &UnivariatePolynomial) -> Result<Self> {
        let mut counts = Vec::with_capacity(top + 1);
        for degree in (0..=top).rev() {
            let c = poly.coeff(degree);
            if c < 0 {
                return Err(Error::NegativeCoefficient { degree, coefficient: c });
            }
            counts.push(c as u64);
        }
        if poly.degree().is_some_and(|d| d > top) {
            let degree = poly.degree().unwrap();
            return Err(Error::NegativeCoefficient {
                degree,
                coefficient: poly.coeff(degree),
            });
        }
        Ok(Self::new(kind, dim, counts))
    }

    pub fn is_polytope(&self) -> bool {
        self.kind != PolytopeKind::Arrangement
    }

    /// `f_i`, with `i = -1` meaning the empty face of a polytope.
    pub fn f(&self, i: isize) -> u64 {
        let offset = if self.is_polytope() { 1 } else { 0 };
        let idx = i + offset;
        if idx < 0 {
            return 0;
        }
        self.counts.get(idx as usize).copied().unwrap_or(0)
    }

    pub fn polynomial(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_descending(self.counts.iter().map(|&c| c as i64).collect())
    }

    /// Alternating sum `Σ (−1)^i f_i` over the stored range.
    pub fn euler_characteristic(&self) -> i64 {
        let start: isize = if self.is_polytope() { -1 } else { 0 };
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                if (start + k as isize).rem_euclid(2) == 0 {
                    c as i64
                } else {
                    -(c as i64)
                }
            })
            .sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "polytope": self.kind.name(),
            "dim": self.dim,
            "f_vector": self.counts,
            "f_polynomial": self.polynomial().to_string(),
        })
    }
}

/// `f^A(x) = (−1)^r M(−x, −1)`.
pub fn arrangement_f_polynomial(lattice: &FlatLattice) -> Result<FVector> {
    let r = lattice.rank();
    let mut poly = UnivariatePolynomial::default();
    for ((a, b), c) in lattice.moebius_polynomial().terms() {
        poly.add_term(a, sign(r + a + b) * c);
    }
    FVector::from_polynomial(PolytopeKind::Arrangement, r, r, &poly)
}

/// Number of chambers, `(−1)^r χ(−1)`.
pub fn region_count(system: &WeightedSplitSystem) -> Result<u64> {
    system.require_compatible()?;
    let lattice = FlatLattice::of_system(system);
    Ok(chambers(&lattice))
}

pub(crate) fn chambers(lattice: &FlatLattice) -> u64 {
    let value = sign(lattice.rank()) * lattice.characteristic_polynomial().eval(-1);
    u64::try_from(value).expect("chamber count is positive")
}

/// `f^LIP(x) = (−x)^r M(−1/x, −1) + x^{r+1}`.
pub fn lipschitz_from_lattice(lattice: &FlatLattice) -> Result<FVector> {
    let r = lattice.rank();
    let mut poly = UnivariatePolynomial::monomial(1, r + 1);
    for ((a, b), c) in lattice.moebius_polynomial().terms() {
        poly.add_term(r - a, sign(r + a + b) * c);
    }
    FVector::from_polynomial(PolytopeKind::Lipschitz, r, r + 1, &poly)
}

/// `f^P(x) = (−1)^r M(−x, −1)·x + 1`.
pub fn fundamental_from_lattice(lattice: &FlatLattice) -> Result<FVector> {
    let r = lattice.rank();
    let mut poly = UnivariatePolynomial::monomial(1, 0);
    for ((a, b), c) in lattice.moebius_polynomial().terms() {
        poly.add_term(a + 1, sign(r + a + b) * c);
    }
    FVector::from_polynomial(PolytopeKind::Fundamental, r, r + 1, &poly)
}

/// f-vector of the Lipschitz polytope of a tree-like pseudometric. Zero-distance
/// classes collapse first, so the dimension is one less than the number of classes.
pub fn lipschitz_f_polynomial(m: &DistanceMatrix) -> Result<FVector> {
    let system = decompose(m)?;
    lipschitz_f_polynomial_of_system(&system)
}

pub fn lipschitz_f_polynomial_of_system(system: &WeightedSplitSystem) -> Result<FVector> {
    system.require_compatible()?;
    lipschitz_from_lattice(&FlatLattice::of_system(system))
}

/// f-vector of the fundamental polytope of a tree-like metric. Pseudometrics are refused.
pub fn fundamental_f_polynomial(m: &DistanceMatrix) -> Result<FVector> {
    if m.len() < 2 {
        return Err(Error::TooFewPoints(2));
    }
    let report = validate(m);
    if report.is_pseudometric() {
        if let Some((i, j)) = m.first_zero_pair() {
            return Err(Error::NotAMetric(i, j));
        }
    }
    let system = decompose(m)?;
    fundamental_f_polynomial_of_system(&system)
}

pub fn fundamental_f_polynomial_of_system(system: &WeightedSplitSystem) -> Result<FVector> {
    if system.ground_size() < 2 {
        return Err(Error::TooFewPoints(2));
    }
    system.require_compatible()?;
    let partition = system.partition();
    if let Some(block) = partition.blocks().iter().find(|b| b.len() > 1) {
        return Err(Error::NotAMetric(block[0], block[1]));
    }
    fundamental_from_lattice(&FlatLattice::of_system(system))
}

/// Polar dual: `f_i^P = f_{m−1−i}^{LIP}`, i.e. the count list reversed.
pub fn dualize_f(f: &FVector) -> FVector {
    let kind = match f.kind {
        PolytopeKind::Lipschitz => PolytopeKind::Fundamental,
        PolytopeKind::Fundamental => PolytopeKind::Lipschitz,
        PolytopeKind::Arrangement => panic!("only polytope f-vectors can be dualized"),
    };
    let mut counts = f.counts.clone();
    counts.reverse();
    FVector::new(kind, f.dim, counts)
}

fn sign(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;
    use crate::rational::int;
    use crate::split::{tree_to_splits, Split};
    use crate::tree::tree_to_metric;

    fn metric(newick: &str) -> DistanceMatrix {
        tree_to_metric(&parse_newick(newick).unwrap())
    }

    fn system(newick: &str) -> WeightedSplitSystem {
        tree_to_splits(&parse_newick(newick).unwrap()).unwrap()
    }

    #[test]
    fn arrangement_examples() {
        let single = FlatLattice::of_system(&system("(a:1)b;"));
        assert_eq!(arrangement_f_polynomial(&single).unwrap().counts, vec![1, 2]);
        let star = FlatLattice::of_system(&system("(a:1,b:1,c:1);"));
        let f = arrangement_f_polynomial(&star).unwrap();
        assert_eq!(f.counts, vec![1, 6, 6]);
        assert_eq!(f.polynomial().to_string(), "t²+6t+6");
    }

    #[test]
    fn region_counts() {
        assert_eq!(region_count(&system("(a:1,b:1,c:1);")).unwrap(), 6);
        assert_eq!(region_count(&system("((1:1,2:1):1,3:1,4:1);")).unwrap(), 18);
        assert_eq!(region_count(&system("(a:1,c:1)b;")).unwrap(), 4);
    }

    #[test]
    fn lipschitz_examples() {
        assert_eq!(
            lipschitz_f_polynomial(&metric("(a:3)b;")).unwrap().counts,
            vec![1, 2, 1]
        );
        let hex = lipschitz_f_polynomial(&metric("(a:1/2,b:1/2,c:1/2);")).unwrap();
        assert_eq!(hex.counts, vec![1, 6, 6, 1]);
        let cat = lipschitz_f_polynomial(&metric("((1:1,2:1):1,3:1,4:1);")).unwrap();
        assert_eq!(cat.counts, vec![1, 18, 28, 12, 1]);
        assert_eq!(cat.euler_characteristic(), 0);
    }

    #[test]
    fn fundamental_examples() {
        let f = fundamental_f_polynomial(&metric("(a:1,b:1,c:1);")).unwrap();
        assert_eq!(f.polynomial().to_string(), "t³+6t²+6t+1");
        let f = fundamental_f_polynomial(&metric("((1:1,2:1):1,3:1,4:1);")).unwrap();
        assert_eq!(f.polynomial().to_string(), "t⁴+12t³+28t²+18t+1");
        assert_eq!(dualize_f(&f).counts, vec![1, 18, 28, 12, 1]);
    }

    #[test]
    fn fundamental_refuses_pseudometrics() {
        let m = tree_to_metric(&parse_newick("(a:1,b:1)c;").unwrap());
        assert!(fundamental_f_polynomial(&m).is_ok());
        let t = crate::tree::XTree::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0, 0, 1],
            2,
            vec![crate::tree::Edge {
                a: 0,
                b: 1,
                weight: int(2),
            }],
        )
        .unwrap();
        let m = tree_to_metric(&t);
        assert_eq!(fundamental_f_polynomial(&m).unwrap_err(), Error::NotAMetric(0, 1));
        // the Lipschitz polytope of the quotient is a segment
        assert_eq!(lipschitz_f_polynomial(&m).unwrap().counts, vec![1, 2, 1]);
    }

    #[test]
    fn incompatible_systems_refused() {
        let names: Vec<String> = (1..=4).map(|i| i.to_string()).collect();
        let s = |side: &[usize]| Split::new(4, side.iter().copied()).unwrap();
        let sys = WeightedSplitSystem::new(
            names,
            vec![(s(&[0, 1]), int(1)), (s(&[0, 2]), int(1)), (s(&[0, 3]), int(1))],
        )
        .unwrap();
        assert_eq!(
            lipschitz_f_polynomial_of_system(&sys).unwrap_err(),
            Error::IncompatibleSystem(0, 1)
        );
        assert_eq!(
            fundamental_f_polynomial_of_system(&sys).unwrap_err(),
            Error::IncompatibleSystem(0, 1)
        );
        assert!(region_count(&sys).is_err());
    }

    #[test]
    fn single_point_lipschitz_is_a_point() {
        let m = DistanceMatrix::new(vec!["a".into()], vec![vec![int(0)]]).unwrap();
        assert_eq!(lipschitz_f_polynomial(&m).unwrap().counts, vec![1, 1]);
        assert_eq!(fundamental_f_polynomial(&m).unwrap_err(), Error::TooFewPoints(2));
    }

    #[test]
    fn dualize_is_an_involution() {
        let f = FVector::new(PolytopeKind::Fundamental, 2, vec![1, 6, 6, 1]);
        assert_eq!(dualize_f(&f).counts, f.counts);
        assert_eq!(dualize_f(&dualize_f(&f)), f);
    }
}

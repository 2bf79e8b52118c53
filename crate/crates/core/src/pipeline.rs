//! Runs the lattice formulas and the brute-force oracle side by side.

use serde_json::json;

use crate::enumeration::{fundamental_f_polynomial, lipschitz_f_polynomial, FVector, PolytopeKind};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::oracle::{fundamental_face_lattice, lipschitz_face_lattice};
use crate::par::Strategy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub formula: FVector,
    pub oracle: FVector,
}

impl Comparison {
    pub fn kind(&self) -> PolytopeKind {
        self.formula.kind
    }

    pub fn matches(&self) -> bool {
        self.formula == self.oracle
    }

    /// Agreement of `f_{-1}, f_0, …` one entry at a time.
    pub fn per_dimension(&self) -> Vec<bool> {
        let len = self.formula.counts.len().max(self.oracle.counts.len());
        (0..len)
            .map(|i| self.formula.counts.get(i) == self.oracle.counts.get(i))
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "polytope": self.kind().name(),
            "match": self.matches(),
            "f_formula": self.formula.counts,
            "f_oracle": self.oracle.counts,
            "per_dimension": self.per_dimension(),
        })
    }
}

/// The oracle's f-vector of the Lipschitz or fundamental polytope.
pub fn oracle_f_vector(m: &DistanceMatrix, kind: PolytopeKind, strategy: Strategy) -> Result<FVector> {
    let lattice = match kind {
        PolytopeKind::Lipschitz => lipschitz_face_lattice(m, strategy)?,
        PolytopeKind::Fundamental => fundamental_face_lattice(m, strategy)?,
        PolytopeKind::Arrangement => {
            return Err(Error::Unsupported(
                "the oracle builds polytopes, not arrangements".into(),
            ))
        }
    };
    Ok(FVector::new(kind, lattice.dim(), lattice.f_vector()))
}

pub fn formula_f_vector(m: &DistanceMatrix, kind: PolytopeKind) -> Result<FVector> {
    match kind {
        PolytopeKind::Lipschitz => lipschitz_f_polynomial(m),
        PolytopeKind::Fundamental => fundamental_f_polynomial(m),
        PolytopeKind::Arrangement => Err(Error::Unsupported(
            "compare covers the Lipschitz and fundamental polytopes".into(),
        )),
    }
}

pub fn compare(m: &DistanceMatrix, kind: PolytopeKind, strategy: Strategy) -> Result<Comparison> {
    let formula = formula_f_vector(m, kind)?;
    let oracle = oracle_f_vector(m, kind, strategy)?;
    Ok(Comparison { formula, oracle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{caterpillar, random_corpus, star};
    use crate::rational::rat;
    use crate::tree::tree_to_metric;

    #[test]
    fn small_families_agree() {
        for tree in [caterpillar(3), caterpillar(4), star(4, rat(1, 2))] {
            let m = tree_to_metric(&tree);
            for kind in [PolytopeKind::Lipschitz, PolytopeKind::Fundamental] {
                let c = compare(&m, kind, Strategy::Parallel).unwrap();
                assert!(c.matches(), "{kind}: {:?} vs {:?}", c.formula.counts, c.oracle.counts);
                assert!(c.per_dimension().iter().all(|&b| b));
            }
        }
    }

    #[test]
    fn random_small_trees_agree() {
        for tree in random_corpus(5, 12).into_iter().filter(|t| t.labels().len() <= 5) {
            let m = tree_to_metric(&tree);
            assert!(compare(&m, PolytopeKind::Lipschitz, Strategy::Sequential)
                .unwrap()
                .matches());
            assert!(compare(&m, PolytopeKind::Fundamental, Strategy::Sequential)
                .unwrap()
                .matches());
        }
    }

    #[test]
    fn json_shape() {
        let c = compare(
            &tree_to_metric(&caterpillar(3)),
            PolytopeKind::Fundamental,
            Strategy::Sequential,
        )
        .unwrap();
        let v = c.to_json_value();
        assert_eq!(v["match"], true);
        assert_eq!(v["f_formula"], json!([1, 6, 6, 1]));
        assert_eq!(v["f_oracle"], json!([1, 6, 6, 1]));
    }
}

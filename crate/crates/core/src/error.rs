use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed number {0:?}")]
    MalformedNumber(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("matrix input, line {line}: {message}")]
    MatrixFormat { line: usize, message: String },
    #[error("newick syntax error at byte {position}: {message}")]
    Newick { position: usize, message: String },
    #[error("split system input: {0}")]
    SplitFormat(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("weights must be positive (split {0})")]
    NonPositiveWeight(String),
    #[error("duplicate split {0}")]
    DuplicateSplit(String),
    #[error("splits live on different ground sets ({0} vs {1} points)")]
    GroundSetMismatch(usize, usize),
    #[error("input is not a pseudometric: {0}")]
    NotAPseudometric(String),
    #[error("points {0} and {1} are at distance zero; a metric is required")]
    NotAMetric(usize, usize),
    #[error("four point condition fails on quadruple {0:?}")]
    FourPointViolation([usize; 4]),
    #[error("split system is not compatible: splits {0} and {1} cross")]
    IncompatibleSystem(usize, usize),
    #[error("need at least {0} points")]
    TooFewPoints(usize),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("degenerate affine hull: {0}")]
    DegenerateHull(String),
    #[error("inconsistent vertex-facet incidences: {0}")]
    InconsistentIncidence(String),
    #[error("oracle dimension {dim} exceeds the limit {max}")]
    OracleLimit { dim: usize, max: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("negative coefficient {coefficient} at degree {degree} of an f-polynomial")]
    NegativeCoefficient { degree: usize, coefficient: i64 },
}

impl Error {
    /// True when the input was well formed but violates a mathematical hypothesis
    /// (as opposed to being unreadable or malformed).
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotAPseudometric(_)
                | Error::NotAMetric(..)
                | Error::FourPointViolation(_)
                | Error::IncompatibleSystem(..)
                | Error::TooFewPoints(_)
        )
    }
}

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use treetope::enumeration::{fundamental_f_polynomial_of_system, lipschitz_f_polynomial_of_system};
use treetope::oracle::FaceLattice;
use treetope::{
    arrangement_f_polynomial, compare, fundamental_face_lattice, lipschitz_face_lattice, reconstruct_tree,
    split_metric, validate, zero_quotient, DistanceMatrix, Error, FVector, FlatLattice, PolytopeKind, RankRoute,
    SplitMatroid, Strategy, UnivariatePolynomial, WeightedSplitSystem,
};

use crate::input::Input;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatroidOutput {
    Flats,
    Moebius,
    Charpoly,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub polytope: Option<PolytopeKind>,
    pub output: Option<MatroidOutput>,
    pub matroid_only: bool,
    pub max_oracle_dim: usize,
    pub strategy: Strategy,
    pub dump: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            polytope: None,
            output: None,
            matroid_only: false,
            max_oracle_dim: 6,
            strategy: Strategy::Parallel,
            dump: false,
        }
    }
}

/// A regular payload. `check` may still exit 1 when the input is not tree-like.
pub struct Outcome {
    pub payload: Map<String, Value>,
    pub exit: u8,
}

/// The error document of a failed run.
pub struct Report {
    pub message: String,
    pub body: Map<String, Value>,
    pub exit: u8,
}

type Run = Result<Outcome, Failure>;

fn ok(payload: Value) -> Run {
    let Value::Object(payload) = payload else {
        unreachable!("payloads are objects")
    };
    Ok(Outcome { payload, exit: 0 })
}

pub fn run(command: &str, input: &Input, options: &Options) -> Run {
    match command {
        "check" => check(input),
        "decompose" => decompose(input),
        "fvector" => fvector(input, options),
        "matroid" => matroid(input, options),
        "oracle" => oracle(input, options),
        "compare" => compare_paths(input, options),
        other => unreachable!("unknown command {other}"),
    }
}

fn check(input: &Input) -> Run {
    let m = input.metric();
    let report = validate(&m);
    let tree_like = report.is_pseudometric() && report.four_point;
    let labels = m.labels();
    let named = |ix: &[usize]| ix.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
    let witness = report
        .triangle_witness
        .map(|w| named(&w))
        .or_else(|| report.four_point_witness.map(|w| named(&w)));
    let mut outcome = ok(json!({
        "labels": labels,
        "report": serde_json::to_value(&report).expect("report serializes"),
        "pseudometric": report.is_pseudometric(),
        "metric": report.is_metric(),
        "tree_like": tree_like,
        "witness": witness,
    }))?;
    outcome.exit = if tree_like { 0 } else { 1 };
    Ok(outcome)
}

fn decompose(input: &Input) -> Run {
    let system = input.system()?;
    system.require_compatible()?;
    let newick = reconstruct_tree(&split_metric(&system))?.to_newick();
    let mut payload = system.to_json_value();
    payload["newick"] = json!(newick);
    ok(payload)
}

fn fvector(input: &Input, options: &Options) -> Run {
    let system = input.system()?;
    let f = match options.polytope.unwrap_or(PolytopeKind::Fundamental) {
        PolytopeKind::Arrangement => {
            if !options.matroid_only {
                system.require_compatible()?;
            }
            arrangement_f_polynomial(&FlatLattice::of_system(&system))?
        }
        PolytopeKind::Lipschitz => lipschitz_f_polynomial_of_system(&system)?,
        PolytopeKind::Fundamental => fundamental_f_polynomial_of_system(&system)?,
    };
    ok(f.to_json_value())
}

fn polynomial(p: &UnivariatePolynomial) -> Value {
    json!({ "polynomial": p.to_string(), "coefficients": p.to_json_value() })
}

fn matroid(input: &Input, options: &Options) -> Run {
    let system = input.system()?;
    if !options.matroid_only {
        system.require_compatible()?;
    }
    let matroid = SplitMatroid::new(&system);
    let lattice = FlatLattice::new(&matroid);
    let route = match lattice.route() {
        RankRoute::Partition => "partition",
        RankRoute::LinearAlgebra => "linear_algebra",
    };
    let mut payload = json!({
        "rank": lattice.rank(),
        "route": route,
        "splits": split_names(&system),
    });
    let wants = |part| options.output.is_none_or(|o| o == part);
    if wants(MatroidOutput::Flats) {
        let flats: Vec<Value> = lattice
            .flats()
            .iter()
            .map(|f| json!({ "splits": f.splits, "rank": f.rank }))
            .collect();
        payload["flats"] = json!(flats);
    }
    if wants(MatroidOutput::Moebius) {
        let triples: Vec<Value> = lattice.moebius_triples().map(|(x, y, m)| json!([x, y, m])).collect();
        let mp = lattice.moebius_polynomial();
        payload["moebius"] = json!(triples);
        payload["moebius_polynomial"] = json!({ "polynomial": mp.to_string(), "coefficients": mp.to_json_value() });
    }
    if wants(MatroidOutput::Charpoly) {
        payload["characteristic_polynomial"] = polynomial(&lattice.characteristic_polynomial());
    }
    ok(payload)
}

fn split_names(system: &WeightedSplitSystem) -> Vec<String> {
    system.splits().map(|s| s.display_with(system.labels())).collect()
}

fn polytopes(options: &Options) -> Vec<PolytopeKind> {
    match options.polytope {
        Some(kind) => vec![kind],
        None => vec![PolytopeKind::Lipschitz, PolytopeKind::Fundamental],
    }
}

/// Refuses oracle runs above the configured dimension before any work is done.
fn guard(m: &DistanceMatrix, options: &Options) -> Result<(), Failure> {
    let (quotient, _) = zero_quotient(m)?;
    let dim = quotient.len().saturating_sub(1);
    if dim > options.max_oracle_dim {
        return Err(Error::OracleLimit {
            dim,
            max: options.max_oracle_dim,
        }
        .into());
    }
    Ok(())
}

fn face_lattice(m: &DistanceMatrix, kind: PolytopeKind, strategy: Strategy) -> Result<FaceLattice, Error> {
    match kind {
        PolytopeKind::Lipschitz => lipschitz_face_lattice(m, strategy),
        PolytopeKind::Fundamental => fundamental_face_lattice(m, strategy),
        PolytopeKind::Arrangement => Err(Error::Unsupported(
            "the oracle builds polytopes, not arrangements".into(),
        )),
    }
}

fn oracle(input: &Input, options: &Options) -> Run {
    let m = input.metric();
    guard(&m, options)?;
    let mut payload = Map::new();
    for kind in polytopes(options) {
        let lattice = face_lattice(&m, kind, options.strategy)?;
        let mut entry = FVector::new(kind, lattice.dim(), lattice.f_vector()).to_json_value();
        entry["euler_characteristic"] = json!(lattice.euler_characteristic());
        if options.dump {
            entry["face_lattice"] = lattice.to_json_value();
        }
        payload.insert(kind.name().into(), entry);
    }
    ok(Value::Object(payload))
}

fn compare_paths(input: &Input, options: &Options) -> Run {
    let m = input.metric();
    guard(&m, options)?;
    let comparisons = polytopes(options)
        .into_iter()
        .map(|kind| compare(&m, kind, options.strategy))
        .collect::<Result<Vec<_>, _>>()?;
    let mut payload = json!({
        "match": comparisons.iter().all(|c| c.matches()),
        "comparisons": comparisons.iter().map(|c| c.to_json_value()).collect::<Vec<_>>(),
    });
    if let [single] = comparisons.as_slice() {
        for key in ["polytope", "f_formula", "f_oracle", "per_dimension"] {
            payload[key] = single.to_json_value()[key].clone();
        }
    }
    ok(payload)
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::MalformedNumber(_) => "MalformedNumber",
        Error::ZeroDenominator(_) => "ZeroDenominator",
        Error::MatrixFormat { .. } => "MatrixFormat",
        Error::Newick { .. } => "NewickSyntax",
        Error::SplitFormat(_) => "SplitFormat",
        Error::InvalidTree(_) => "InvalidTree",
        Error::InvalidSplit(_) => "InvalidSplit",
        Error::NonPositiveWeight(_) => "NonPositiveWeight",
        Error::DuplicateSplit(_) => "DuplicateSplit",
        Error::GroundSetMismatch(..) => "GroundSetMismatch",
        Error::NotAPseudometric(_) => "NotAPseudometric",
        Error::NotAMetric(..) => "NotAMetric",
        Error::FourPointViolation(_) => "FourPointViolation",
        Error::IncompatibleSystem(..) => "IncompatibleSystem",
        Error::TooFewPoints(_) => "TooFewPoints",
        Error::Unbounded => "Unbounded",
        Error::DegenerateHull(_) => "DegenerateHull",
        Error::InconsistentIncidence(_) => "InconsistentIncidence",
        Error::OracleLimit { .. } => "OracleLimit",
        Error::Unsupported(_) => "Unsupported",
        Error::NegativeCoefficient { .. } => "NegativeCoefficient",
    }
}

/// Machine-readable evidence for a refusal, in terms of the input's labels.
fn witness(e: &Error, input: &Input) -> Option<Value> {
    let labels = input.labels();
    let points = |ix: &[usize]| {
        json!({
            "indices": ix,
            "points": ix.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
        })
    };
    match e {
        Error::NotAPseudometric(_) => Some(serde_json::to_value(validate(&input.metric())).expect("report serializes")),
        Error::NotAMetric(i, j) => Some(points(&[*i, *j])),
        Error::FourPointViolation(q) => Some(points(q)),
        Error::IncompatibleSystem(a, b) => {
            let system = input.system().ok()?;
            Some(json!({
                "indices": [a, b],
                "splits": [system.split(*a).display_with(labels), system.split(*b).display_with(labels)],
            }))
        }
        Error::TooFewPoints(k) => Some(json!({ "required": k, "points": labels.len() })),
        _ => None,
    }
}

pub fn describe_failure(failure: &Failure, input: Option<&Input>) -> Report {
    let message = failure.message();
    let mut error = json!({ "message": message });
    match failure {
        Failure::Core(e) => {
            error["kind"] = json!(kind(e));
            match e {
                Error::MatrixFormat { line, .. } => error["line"] = json!(line),
                Error::Newick { position, .. } => error["position"] = json!(position),
                Error::OracleLimit { dim, max } => {
                    error["dim"] = json!(dim);
                    error["max"] = json!(max);
                }
                _ => {}
            }
            if let Some(w) = input.and_then(|i| witness(e, i)) {
                error["witness"] = w;
            }
        }
        Failure::Io { path, .. } => {
            error["kind"] = json!("Io");
            error["path"] = json!(path);
        }
    }
    let mut body = Map::new();
    body.insert("error".into(), error);
    Report {
        message,
        body,
        exit: failure.exit_code(),
    }
}

//! `treetope`: split decompositions, split arrangements and polytope
//! f-vectors of tree-like metrics from the command line.

mod commands;
mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use treetope::{Error, PolytopeKind, Strategy};

use commands::{MatroidOutput, Options};
use input::Source;

const SCHEMA: &str = "treetope/1";

#[derive(Parser)]
#[command(
    name = "treetope",
    version,
    about = "Exact f-vectors of polytopes of tree-like metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Distance matrix file.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Newick tree file.
    #[arg(long, value_name = "FILE")]
    newick: Option<PathBuf>,
    /// Split system JSON file.
    #[arg(long, value_name = "FILE")]
    splits: Option<PathBuf>,
}

impl InputArgs {
    fn source(&self) -> Source {
        match (&self.matrix, &self.newick, &self.splits) {
            (Some(p), _, _) => Source::Matrix(p.clone()),
            (_, Some(p), _) => Source::Newick(p.clone()),
            (_, _, Some(p)) => Source::Splits(p.clone()),
            _ => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    /// Restrict to one polytope; both are computed by default.
    #[arg(long, value_enum)]
    polytope: Option<PolytopeArg>,
    /// Refuse to run the brute-force oracle above this dimension.
    #[arg(long, default_value_t = 6)]
    max_oracle_dim: usize,
    /// Run the oracle on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Report the (pseudo)metric axioms and the four point condition.
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the weighted split system and the reconstructed tree.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
    },
    /// f-vector of a polytope or of the split arrangement, from the flat lattice.
    Fvector {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = PolytopeArg::Fundamental)]
        polytope: PolytopeArg,
        /// Accept incompatible split systems (arrangement only).
        #[arg(long)]
        matroid_only: bool,
    },
    /// Flats, Möbius function and characteristic polynomial of the split matroid.
    Matroid {
        #[command(flatten)]
        input: InputArgs,
        /// Emit only this part; everything by default.
        #[arg(long, value_enum)]
        output: Option<MatroidOutput>,
        /// Accept incompatible split systems, ranking by linear algebra.
        #[arg(long)]
        matroid_only: bool,
    },
    /// Face lattices of the polytopes by brute force.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Include vertices, facets and faces.
        #[arg(long)]
        dump: bool,
    },
    /// Run the formulas and the oracle and compare the f-vectors.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolytopeArg {
    Fundamental,
    Lipschitz,
    Arrangement,
}

impl From<PolytopeArg> for PolytopeKind {
    fn from(p: PolytopeArg) -> Self {
        match p {
            PolytopeArg::Fundamental => PolytopeKind::Fundamental,
            PolytopeArg::Lipschitz => PolytopeKind::Lipschitz,
            PolytopeArg::Arrangement => PolytopeKind::Arrangement,
        }
    }
}

/// Anything that ends a run without a regular payload.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io { path: String, message: String },
}

impl Failure {
    pub fn io(path: &Path, e: &std::io::Error) -> Self {
        Failure::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_refusal() => 1,
            _ => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io { path, message } => format!("cannot read {path}: {message}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn split_command(cli: Cli) -> (&'static str, Source, Options) {
    let mut options = Options::default();
    let (name, input) = match cli.command {
        Command::Check { input } => ("check", input),
        Command::Decompose { input } => ("decompose", input),
        Command::Fvector {
            input,
            polytope,
            matroid_only,
        } => {
            options.polytope = Some(polytope.into());
            options.matroid_only = matroid_only;
            ("fvector", input)
        }
        Command::Matroid {
            input,
            output,
            matroid_only,
        } => {
            options.output = output;
            options.matroid_only = matroid_only;
            ("matroid", input)
        }
        Command::Oracle { input, oracle, dump } => {
            options.set_oracle(
                oracle.polytope.map(Into::into),
                oracle.max_oracle_dim,
                oracle.sequential,
            );
            options.dump = dump;
            ("oracle", input)
        }
        Command::Compare { input, oracle } => {
            options.set_oracle(
                oracle.polytope.map(Into::into),
                oracle.max_oracle_dim,
                oracle.sequential,
            );
            ("compare", input)
        }
    };
    (name, input.source(), options)
}

impl Options {
    fn set_oracle(&mut self, polytope: Option<PolytopeKind>, max_dim: usize, sequential: bool) {
        self.polytope = polytope;
        self.max_oracle_dim = max_dim;
        self.strategy = if sequential {
            Strategy::Sequential
        } else {
            Strategy::Parallel
        };
    }
}

fn envelope(command: &str, mut body: Map<String, Value>) -> Value {
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    Value::Object(body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let (name, source, options) = split_command(cli);
    let outcome = match input::load(&source) {
        Ok(input) => commands::run(name, &input, &options).map_err(|f| commands::describe_failure(&f, Some(&input))),
        Err(f) => Err(commands::describe_failure(&f, None)),
    };
    match outcome {
        Ok(outcome) => {
            let document = envelope(name, outcome.payload);
            match format {
                Format::Json => println!("{}", pretty(&document)),
                Format::Text => print!("{}", render::text(name, &document)),
            }
            ExitCode::from(outcome.exit)
        }
        Err(report) => {
            eprintln!("error: {}", report.message);
            if format == Format::Json {
                println!("{}", pretty(&envelope(name, report.body)));
            } else if let Some(witness) = report.body.get("error").and_then(|e| e.get("witness")) {
                eprintln!("witness: {witness}");
            }
            ExitCode::from(report.exit)
        }
    }
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

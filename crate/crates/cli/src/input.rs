use std::fs;
use std::path::{Path, PathBuf};

use treetope::{
    decompose, parse_newick, split_metric, tree_to_metric, tree_to_splits, DistanceMatrix, Error, WeightedSplitSystem,
    XTree,
};

use crate::Failure;

#[derive(Clone, Debug)]
pub enum Source {
    Matrix(PathBuf),
    Newick(PathBuf),
    Splits(PathBuf),
}

/// A parsed input in whichever of the three formats it arrived.
#[derive(Clone, Debug)]
pub enum Input {
    Matrix(DistanceMatrix),
    Tree(XTree),
    Splits(WeightedSplitSystem),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, &e))
}

pub fn load(source: &Source) -> Result<Input, Failure> {
    let loaded = match source {
        Source::Matrix(path) => DistanceMatrix::parse(&read(path)?).map(Input::Matrix),
        Source::Newick(path) => parse_newick(&read(path)?).map(Input::Tree),
        Source::Splits(path) => WeightedSplitSystem::from_json(&read(path)?).map(Input::Splits),
    };
    loaded.map_err(Failure::Core)
}

impl Input {
    pub fn labels(&self) -> &[String] {
        match self {
            Input::Matrix(m) => m.labels(),
            Input::Tree(t) => t.labels(),
            Input::Splits(s) => s.labels(),
        }
    }

    pub fn metric(&self) -> DistanceMatrix {
        match self {
            Input::Matrix(m) => m.clone(),
            Input::Tree(t) => tree_to_metric(t),
            Input::Splits(s) => split_metric(s),
        }
    }

    /// The split system, decomposing a matrix first. Split files are returned
    /// as given, compatible or not.
    pub fn system(&self) -> Result<WeightedSplitSystem, Error> {
        match self {
            Input::Matrix(m) => decompose(m),
            Input::Tree(t) => tree_to_splits(t),
            Input::Splits(s) => Ok(s.clone()),
        }
    }
}

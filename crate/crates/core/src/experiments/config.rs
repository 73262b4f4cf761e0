use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::matgroup::GroupKind;
use crate::walks::{standard_complete_graph, standard_no_backtracking_graph, DecoratedGraph, MAX_WALK_LENGTH};

pub const MIN_SAMPLES: usize = 100;
pub const DEFAULT_PRIME_BUDGET: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupFamily {
    Sl,
    Sp,
    Gl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphChoice {
    Complete,
    NoBacktracking,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Reducible,
    Galois,
    PseudoAnosov,
    StronglyIrreducible,
}

/// Monte Carlo run description. `rank` is the matrix size for `sl` and `gl`
/// and the half-dimension for `sp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupFamily,
    pub rank: usize,
    #[serde(default = "default_graph")]
    pub graph: GraphChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_file: Option<PathBuf>,
    pub lengths: Vec<usize>,
    pub samples: usize,
    /// Required; there is no entropy fallback.
    pub seed: Option<u64>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default = "default_prime_budget")]
    pub prime_budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

fn default_graph() -> GraphChoice {
    GraphChoice::Complete
}

fn default_prime_budget() -> u64 {
    DEFAULT_PRIME_BUDGET
}

impl ExperimentConfig {
    pub fn new(group: GroupFamily, rank: usize, lengths: Vec<usize>, samples: usize, seed: u64) -> Self {
        ExperimentConfig {
            group,
            rank,
            graph: GraphChoice::Complete,
            graph_file: None,
            lengths,
            samples,
            seed: Some(seed),
            checks: Vec::new(),
            prime_budget: DEFAULT_PRIME_BUDGET,
            output_dir: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.seed.is_none() {
            return Err(invalid("seed is mandatory"));
        }
        if self.samples < MIN_SAMPLES {
            return Err(invalid(format!("samples must be at least {MIN_SAMPLES}, got {}", self.samples)));
        }
        if self.lengths.is_empty() {
            return Err(invalid("lengths must not be empty"));
        }
        if self.lengths[0] == 0 || self.lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("lengths must be positive and strictly increasing"));
        }
        if *self.lengths.last().unwrap() > MAX_WALK_LENGTH {
            return Err(invalid(format!("lengths above {MAX_WALK_LENGTH} are not supported")));
        }
        if self.rank == 0 {
            return Err(invalid("rank must be positive"));
        }
        if self.group != GroupFamily::Sp && self.rank < 2 {
            return Err(invalid("sl and gl need rank at least 2"));
        }
        if (self.graph == GraphChoice::File) != self.graph_file.is_some() {
            return Err(invalid("graph_file is required with graph = \"file\" and only then"));
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.expect("validated config has a seed")
    }

    pub fn kind(&self) -> GroupKind {
        match self.group {
            GroupFamily::Sl => GroupKind::SL(self.rank),
            GroupFamily::Sp => GroupKind::Sp(self.rank),
            GroupFamily::Gl => GroupKind::GL(self.rank),
        }
    }

    pub fn build_graph(&self) -> Result<DecoratedGraph> {
        match self.graph {
            GraphChoice::Complete => standard_complete_graph(self.kind()),
            GraphChoice::NoBacktracking => standard_no_backtracking_graph(self.kind()),
            GraphChoice::File => {
                let path = self.graph_file.as_ref().ok_or_else(|| invalid("graph_file missing"))?;
                DecoratedGraph::load(path)
            }
        }
    }
}

use std::path::PathBuf;

use apfree_core::{GenSpec, Limits, NDGenerator, Rat};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn default_max_gen() -> u32 {
    64
}

/// Build configuration, read from one JSON file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub generators: Vec<GenSpec>,
    pub stages: usize,
    #[serde(default)]
    pub eps_schedule: Option<Vec<Rat>>,
    #[serde(default = "default_max_gen")]
    pub max_gen: u32,
    /// Accepted for forward compatibility; the construction itself draws no
    /// randomness.
    #[serde(default)]
    pub seed: u64,
    /// Certificate path; stdout when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.generators.is_empty() {
            return bad("generators must not be empty".into());
        }
        if self.stages == 0 {
            return bad("stages must be at least 1".into());
        }
        if self.max_gen == 0 {
            return bad("max_gen must be at least 1".into());
        }
        if let Some(s) = &self.eps_schedule {
            let half = Rat::new(1, 2);
            if let Some(e) = s.iter().find(|e| !e.is_positive() || **e >= half) {
                return bad(format!("schedule entry {e} outside (0, 1/2)"));
            }
            if s.len() < self.stages {
                return bad(format!("schedule has {} entries for {} stages", s.len(), self.stages));
            }
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits::with_max_gen(self.max_gen)
    }

    pub fn generators(&self) -> Result<Vec<NDGenerator>, CliError> {
        build_generators(&self.generators)
    }
}

pub fn build_generators(specs: &[GenSpec]) -> Result<Vec<NDGenerator>, CliError> {
    specs
        .iter()
        .map(|s| NDGenerator::from_spec(s).map_err(CliError::Core))
        .collect()
}

/// A sets file: a bare list of generator specs or a whole run config.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum SetsFile {
    List(Vec<GenSpec>),
    Config(RunConfig),
}

impl SetsFile {
    pub fn specs(&self) -> &[GenSpec] {
        match self {
            SetsFile::List(v) => v,
            SetsFile::Config(c) => &c.generators,
        }
    }
}

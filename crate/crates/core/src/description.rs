use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Textual description of a finite group, as read from a group file.
///
/// ```json
/// {"type":"permutation","degree":4,"generators":["(1 2 3 4)","(1 2)"]}
/// {"type":"cayley","order":2,"identity":0,"table":[[0,1],[1,0]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupDescription {
    Permutation {
        degree: usize,
        generators: Vec<String>,
    },
    Cayley {
        order: usize,
        #[serde(default)]
        identity: usize,
        table: Vec<Vec<usize>>,
    },
}

impl GroupDescription {
    pub fn permutation<S: Into<String>>(degree: usize, generators: impl IntoIterator<Item = S>) -> Self {
        GroupDescription::Permutation {
            degree,
            generators: generators.into_iter().map(Into::into).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

pub const DEFAULT_ORDER_CAP: usize = 5000;
pub const DEFAULT_SEED: u64 = 0x6e69_6c70;
/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_order: usize,
    /// Seeds the sampled associativity check on large Cayley tables.
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_ORDER_CAP,
            seed: DEFAULT_SEED,
        }
    }
}

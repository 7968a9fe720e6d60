//! Configurations and identifier assignments.
//!
//! A configuration pairs a topology with one input string per node. Identifier
//! assignments are kept separate: correctness of a local algorithm is always
//! quantified over them, so they are never part of the instance itself.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::graph::topology::GraphTopology;

/// A connected graph together with per-node binary input strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    topology: GraphTopology,
    inputs: Vec<BitString>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("expected {expected} inputs, got {got}")]
    InputCountMismatch { expected: usize, got: usize },
}

impl Configuration {
    pub fn new(topology: GraphTopology, inputs: Vec<BitString>) -> Result<Self, ConfigError> {
        if inputs.len() != topology.n() {
            return Err(ConfigError::InputCountMismatch {
                expected: topology.n(),
                got: inputs.len(),
            });
        }
        Ok(Configuration { topology, inputs })
    }

    /// All nodes carry the empty input.
    pub fn with_empty_inputs(topology: GraphTopology) -> Self {
        let inputs = vec![BitString::new(); topology.n()];
        Configuration { topology, inputs }
    }

    pub fn topology(&self) -> &GraphTopology {
        &self.topology
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }

    pub fn input(&self, v: usize) -> &BitString {
        &self.inputs[v]
    }

    pub fn inputs(&self) -> &[BitString] {
        &self.inputs
    }

    pub fn max_input_len(&self) -> usize {
        self.inputs.iter().map(BitString::len).max().unwrap_or(0)
    }

    /// Relabels nodes: node `v` becomes `perm[v]`, carrying its input along.
    pub fn relabel(&self, perm: &[usize]) -> Configuration {
        let topology = self.topology.relabel(perm);
        let mut inputs = vec![BitString::new(); self.n()];
        for v in 0..self.n() {
            inputs[perm[v]] = self.inputs[v].clone();
        }
        Configuration { topology, inputs }
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    inputs: std::collections::BTreeMap<usize, BitString>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let inputs = (0..self.n())
            .filter(|&v| !self.inputs[v].is_empty())
            .map(|v| (v, self.inputs[v].clone()))
            .collect();
        ConfigurationJson {
            n: self.n(),
            edges: self.topology.edges(),
            inputs,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConfigurationJson::deserialize(de)?;
        let topology =
            crate::graph::topology::build_graph(raw.n, &raw.edges).map_err(D::Error::custom)?;
        let mut inputs = vec![BitString::new(); raw.n];
        for (v, w) in raw.inputs {
            if v >= raw.n {
                return Err(D::Error::custom(format!("input for missing node {v}")));
            }
            inputs[v] = w;
        }
        Configuration::new(topology, inputs).map_err(D::Error::custom)
    }
}

/// Default polynomial bound for the identifier universe: `n^2`.
pub fn default_universe_bound(n: usize) -> u64 {
    (n as u64) * (n as u64)
}

/// An injective map from nodes to `1..=universe_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdAssignment {
    ids: Vec<u64>,
    universe_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdError {
    #[error("duplicate identifier {0}")]
    DuplicateId(u64),
    #[error("identifier {id} outside 1..={bound}")]
    IdOutOfRange { id: u64, bound: u64 },
}

impl IdAssignment {
    pub fn new(ids: Vec<u64>, universe_bound: u64) -> Result<Self, IdError> {
        let mut seen = std::collections::HashSet::new();
        for &id in &ids {
            if id == 0 || id > universe_bound {
                return Err(IdError::IdOutOfRange {
                    id,
                    bound: universe_bound,
                });
            }
            if !seen.insert(id) {
                return Err(IdError::DuplicateId(id));
            }
        }
        Ok(IdAssignment {
            ids,
            universe_bound,
        })
    }

    /// Node `v` gets identifier `v + 1`; universe bound `n^2`.
    pub fn canonical(n: usize) -> Self {
        IdAssignment {
            ids: (1..=n as u64).collect(),
            universe_bound: default_universe_bound(n),
        }
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn universe_bound(&self) -> u64 {
        self.universe_bound
    }
}

/// How to quantify over identifier assignments at desk scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdStrategy {
    /// Every permutation of `{1..n}`. Feasible for n <= 5.
    AllPermutations,
    /// `count` seeded injective maps into `{1..n^2}`.
    Sampled { count: usize, seed: u64 },
}

impl IdStrategy {
    /// Exhaustive permutations up to n = 5, twenty seeded samples beyond.
    pub fn auto(n: usize, seed: u64) -> IdStrategy {
        if n <= 5 {
            IdStrategy::AllPermutations
        } else {
            IdStrategy::Sampled { count: 20, seed }
        }
    }

    pub fn generate(&self, n: usize) -> Vec<IdAssignment> {
        match *self {
            IdStrategy::AllPermutations => {
                use itertools::Itertools;
                (1..=n as u64)
                    .permutations(n)
                    .map(|ids| IdAssignment {
                        ids,
                        universe_bound: default_universe_bound(n),
                    })
                    .collect()
            }
            IdStrategy::Sampled { count, seed } => {
                use rand::Rng;
                use rand::SeedableRng;
                let bound = default_universe_bound(n);
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        let mut picked = std::collections::BTreeSet::new();
                        while picked.len() < n {
                            picked.insert(rng.random_range(1..=bound));
                        }
                        // BTreeSet order would bias ids to be sorted; shuffle.
                        let mut ids: Vec<u64> = picked.into_iter().collect();
                        for i in (1..ids.len()).rev() {
                            ids.swap(i, rng.random_range(0..=i));
                        }
                        IdAssignment {
                            ids,
                            universe_bound: bound,
                        }
                    })
                    .collect()
            }
        }
    }
}

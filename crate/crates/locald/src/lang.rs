//! The language catalog.
//!
//! A language is an isomorphism-closed set of configurations. Membership is
//! decided by direct global computation with no cleverness, so these oracles
//! can serve as the reference that local algorithms are judged against.
//! Inputs outside a language's alphabet make a configuration a non-member;
//! membership is total.

use crate::bits::BitString;
use crate::graph::{
    enumerate_instances, find_fpf_automorphism, Configuration, GraphError, InstanceKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LanguageId {
    /// Trees containing a node within distance `t` of every node.
    TreeRadius(u32),
    /// All trees.
    Tree,
    /// Trees admitting a fixed-point-free automorphism.
    FpfSymmetryOnTrees,
    /// Single-bit inputs with equally many zeros and ones.
    EqSizePartition,
    /// Bipartite graphs.
    Bipartite,
}

impl LanguageId {
    /// Command-line names: `tree`, `tree_t:2`, `fpf-sym-trees`,
    /// `eq-size-partition`, `bipartite`.
    pub fn parse_cli(s: &str) -> Option<LanguageId> {
        match s {
            "tree" => Some(LanguageId::Tree),
            "fpf-sym-trees" => Some(LanguageId::FpfSymmetryOnTrees),
            "eq-size-partition" => Some(LanguageId::EqSizePartition),
            "bipartite" => Some(LanguageId::Bipartite),
            _ => {
                let t = s.strip_prefix("tree_t:")?.parse().ok()?;
                Some(LanguageId::TreeRadius(t))
            }
        }
    }

    pub fn cli_name(&self) -> String {
        match self {
            LanguageId::TreeRadius(t) => format!("tree_t:{t}"),
            LanguageId::Tree => "tree".to_string(),
            LanguageId::FpfSymmetryOnTrees => "fpf-sym-trees".to_string(),
            LanguageId::EqSizePartition => "eq-size-partition".to_string(),
            LanguageId::Bipartite => "bipartite".to_string(),
        }
    }
}

fn all_inputs_empty(config: &Configuration) -> bool {
    config.inputs().iter().all(BitString::is_empty)
}

/// Global membership oracle.
pub fn member(lang: LanguageId, config: &Configuration) -> bool {
    let g = config.topology();
    match lang {
        LanguageId::TreeRadius(t) => {
            all_inputs_empty(config) && g.is_tree() && g.radius() <= t
        }
        LanguageId::Tree => all_inputs_empty(config) && g.is_tree(),
        LanguageId::FpfSymmetryOnTrees => {
            all_inputs_empty(config) && g.is_tree() && find_fpf_automorphism(g).is_some()
        }
        LanguageId::EqSizePartition => {
            let mut zeros = 0usize;
            let mut ones = 0usize;
            for w in config.inputs() {
                match w.as_single_bit() {
                    Some(false) => zeros += 1,
                    Some(true) => ones += 1,
                    None => return false,
                }
            }
            zeros == ones
        }
        LanguageId::Bipartite => all_inputs_empty(config) && g.two_coloring().is_some(),
    }
}

/// All member configurations on `n` nodes, one topology representative per
/// isomorphism class. For input-carrying languages every input vector over
/// each representative is expanded before filtering.
pub fn positive_instances(lang: LanguageId, n: usize) -> Result<Vec<Configuration>, GraphError> {
    Ok(language_instances(lang, n)?
        .into_iter()
        .filter(|c| member(lang, c))
        .collect())
}

/// The desk-scale instance universe for a language at size `n`: every
/// connected class, expanded with every 0/1 input vector when the language
/// reads inputs. Membership is not filtered.
pub fn language_instances(lang: LanguageId, n: usize) -> Result<Vec<Configuration>, GraphError> {
    let classes = enumerate_instances(InstanceKind::ConnectedGraphs, n, 8)?;
    match lang {
        LanguageId::EqSizePartition => {
            let mut out = Vec::new();
            for g in classes {
                for mask in 0u64..(1 << n) {
                    let inputs = (0..n)
                        .map(|v| BitString::from_value_width(mask >> v & 1, 1))
                        .collect();
                    out.push(Configuration::new(g.clone(), inputs).expect("input count"));
                }
            }
            Ok(out)
        }
        _ => Ok(classes
            .into_iter()
            .map(Configuration::with_empty_inputs)
            .collect()),
    }
}

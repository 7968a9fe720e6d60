//! Exhaustive instance generators.
//!
//! Class enumerations (one representative per isomorphism class) grow graphs
//! one node at a time and deduplicate by canonical form:
//!   - every connected graph has a non-cut vertex, so extending every class
//!     on n-1 nodes by a new node wired to every nonempty subset reaches
//!     every class on n nodes;
//!   - every tree has a leaf, so attaching one leaf everywhere reaches every
//!     tree class.
//! Labeled trees come from the Prüfer bijection, hence exactly n^(n-2) of them.

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use crate::graph::iso::{canonical_form, CANONICAL_CAP};
use crate::graph::topology::{build_graph, GraphError, GraphTopology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    /// One representative per isomorphism class of connected graphs.
    ConnectedGraphs,
    /// One representative per isomorphism class of trees.
    Trees,
    /// All labeled trees on nodes `0..n`, via Prüfer sequences.
    LabeledTrees,
}

/// Default size cap for enumeration.
pub const DEFAULT_ENUM_CAP: usize = 8;

pub fn enumerate_instances(
    kind: InstanceKind,
    n: usize,
    cap: usize,
) -> Result<Vec<GraphTopology>, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    match kind {
        InstanceKind::ConnectedGraphs | InstanceKind::Trees => {
            if n > CANONICAL_CAP {
                return Err(GraphError::CapExceeded {
                    n,
                    cap: CANONICAL_CAP,
                });
            }
            // Searches over lift codomains re-enumerate the same class lists
            // for every probed configuration, so class enumerations are
            // memoized process-wide.
            static CLASS_CACHE: OnceLock<Mutex<HashMap<(InstanceKind, usize), Vec<GraphTopology>>>> =
                OnceLock::new();
            let cache = CLASS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
            if let Some(hit) = cache.lock().unwrap().get(&(kind, n)) {
                return Ok(hit.clone());
            }
            let trees_only = kind == InstanceKind::Trees;
            let mut classes = vec![build_graph(1, &[]).expect("single node")];
            for size in 2..=n {
                let mut seen = HashSet::new();
                let mut next = Vec::new();
                for g in &classes {
                    let subsets: u32 = 1 << (size - 1);
                    for mask in 1..subsets {
                        if trees_only && mask.count_ones() != 1 {
                            continue;
                        }
                        let mut edges = g.edges();
                        for v in 0..size - 1 {
                            if mask >> v & 1 == 1 {
                                edges.push((v, size - 1));
                            }
                        }
                        let ext = build_graph(size, &edges).expect("extension stays valid");
                        if seen.insert(canonical_form(&ext)?) {
                            next.push(ext);
                        }
                    }
                }
                next.sort_by_key(|g| canonical_form(g).expect("size under cap").bits);
                classes = next;
            }
            cache
                .lock()
                .unwrap()
                .insert((kind, n), classes.clone());
            Ok(classes)
        }
        InstanceKind::LabeledTrees => {
            if n == 1 {
                return Ok(vec![build_graph(1, &[]).expect("single node")]);
            }
            if n == 2 {
                return Ok(vec![build_graph(2, &[(0, 1)]).expect("edge")]);
            }
            let mut out = Vec::new();
            let mut seq = vec![0usize; n - 2];
            loop {
                out.push(prufer_decode(n, &seq));
                // odometer over sequences in {0..n-1}^(n-2)
                let mut i = 0;
                loop {
                    if i == seq.len() {
                        return Ok(out);
                    }
                    seq[i] += 1;
                    if seq[i] < n {
                        break;
                    }
                    seq[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

/// Decodes a length `n-2` sequence over `0..n` into the labeled tree it
/// names; every sequence names exactly one, which is why sampling uniform
/// sequences samples uniform labeled trees.
pub fn prufer_decode(n: usize, seq: &[usize]) -> GraphTopology {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &s in seq {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let mut it = leaves.into_iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    edges.push((a, b));
    build_graph(n, &edges).expect("Prüfer decodes to a tree")
}

//! Radius-t views.
//!
//! The t-neighborhood of v is the subgraph induced by the nodes at distance
//! at most t, minus any edge joining two nodes both at distance exactly t:
//! after t communication rounds those edges are precisely the ones v cannot
//! have heard about. Views carry identifiers, inputs, and (for verifiers)
//! certificates, but no global indices, so everything a local algorithm does
//! is a function of the view alone.

use crate::bits::BitString;
use crate::graph::config::{Configuration, IdAssignment};

/// What one node sees after `t` rounds. Nodes are view-local indices ordered
/// by (distance, original index); the root is index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusView {
    dist: Vec<u32>,
    adj: Vec<Vec<usize>>,
    ids: Vec<u64>,
    inputs: Vec<BitString>,
    certs: Option<Vec<BitString>>,
}

impl RadiusView {
    pub(crate) fn assemble(
        mut nodes: Vec<(u32, u64, BitString, Option<BitString>)>,
        edges_by_id: &[(u64, u64)],
    ) -> RadiusView {
        nodes.sort_by_key(|&(d, id, _, _)| (d, id));
        let index_of: std::collections::HashMap<u64, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, &(_, id, _, _))| (id, i))
            .collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for &(a, b) in edges_by_id {
            let (i, j) = (index_of[&a], index_of[&b]);
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let has_certs = nodes.iter().any(|(_, _, _, c)| c.is_some());
        RadiusView {
            dist: nodes.iter().map(|&(d, _, _, _)| d).collect(),
            adj,
            ids: nodes.iter().map(|&(_, id, _, _)| id).collect(),
            certs: has_certs.then(|| {
                nodes
                    .iter()
                    .map(|(_, _, _, c)| c.clone().expect("all or no certificates"))
                    .collect()
            }),
            inputs: nodes.into_iter().map(|(_, _, w, _)| w).collect(),
        }
    }

    /// Number of nodes in the view.
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The root is always view index 0.
    pub fn root(&self) -> usize {
        0
    }

    /// Distance from the root, which inside a view equals the view-graph distance.
    pub fn dist(&self, v: usize) -> u32 {
        self.dist[v]
    }

    pub fn radius(&self) -> u32 {
        *self.dist.iter().max().unwrap()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn input(&self, v: usize) -> &BitString {
        &self.inputs[v]
    }

    pub fn cert(&self, v: usize) -> Option<&BitString> {
        self.certs.as_ref().map(|c| &c[v])
    }

    pub fn has_certs(&self) -> bool {
        self.certs.is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Views are connected through the root, so tree-ness is an edge count.
    pub fn is_tree(&self) -> bool {
        self.edge_count() == self.len() - 1
    }

    /// Largest pairwise distance measured within the view graph.
    pub fn max_pairwise_distance(&self) -> u32 {
        let mut best = 0;
        for src in 0..self.len() {
            let mut dist = vec![u32::MAX; self.len()];
            dist[src] = 0;
            let mut queue = std::collections::VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            best = best.max(*dist.iter().max().unwrap());
        }
        best
    }
}

/// The view of `v` after `t` rounds, built directly from the global graph.
pub fn ball(
    config: &Configuration,
    ids: &IdAssignment,
    certs: Option<&[BitString]>,
    v: usize,
    t: u32,
) -> RadiusView {
    let g = config.topology();
    let dist = g.distances(v);
    let member: Vec<usize> = (0..g.n()).filter(|&u| dist[u] <= t).collect();
    let nodes = member
        .iter()
        .map(|&u| {
            (
                dist[u],
                ids.id(u),
                config.input(u).clone(),
                certs.map(|c| c[u].clone()),
            )
        })
        .collect();
    let mut edges = Vec::new();
    for &u in &member {
        for &w in g.neighbors(u) {
            if u < w && dist[w] <= t && !(dist[u] == t && dist[w] == t) {
                edges.push((ids.id(u), ids.id(w)));
            }
        }
    }
    RadiusView::assemble(nodes, &edges)
}

/// Root-preserving isomorphism of views that matches inputs and certificates,
/// and identifiers only when `compare_ids` is set.
pub fn views_isomorphic(a: &RadiusView, b: &RadiusView, compare_ids: bool) -> bool {
    if a.len() != b.len() || a.edge_count() != b.edge_count() || a.has_certs() != b.has_certs() {
        return false;
    }
    let n = a.len();
    let compatible = |x: usize, y: usize| {
        a.dist(x) == b.dist(y)
            && a.degree(x) == b.degree(y)
            && a.input(x) == b.input(y)
            && a.cert(x) == b.cert(y)
            && (!compare_ids || a.id(x) == b.id(y))
    };
    // Map nodes of `a` in index order (so by distance layer) by backtracking.
    fn extend(
        a: &RadiusView,
        b: &RadiusView,
        compatible: &dyn Fn(usize, usize) -> bool,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        if x == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] || !compatible(x, y) {
                continue;
            }
            let ok = a.neighbors(x).iter().all(|&nx| match map[nx] {
                Some(ny) => b.neighbors(y).contains(&ny),
                None => true,
            });
            if !ok {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if extend(a, b, compatible, map, used, x + 1) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }
    if !compatible(a.root(), b.root()) {
        return false;
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    map[0] = Some(0);
    used[0] = true;
    extend(a, b, &compatible, &mut map, &mut used, 1)
}

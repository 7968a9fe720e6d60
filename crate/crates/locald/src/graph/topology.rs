//! Connected simple graphs with 0-based node indices.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) out of range for {2} nodes")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph must have at least one node")]
    Empty,
    #[error("size {n} exceeds the cap {cap} for this operation")]
    CapExceeded { n: usize, cap: usize },
}

/// A connected simple undirected graph. Adjacency lists are kept sorted, so
/// all traversals are deterministic in the node indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphTopology {
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for GraphTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GraphTopology(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Validates and builds a [`GraphTopology`] from an edge list.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<GraphTopology, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut adj = vec![Vec::new(); n];
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::EdgeOutOfRange(u, v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let g = GraphTopology { adj };
    if g.bfs_distances(0).iter().any(|d| d.is_none()) {
        return Err(GraphError::Disconnected);
    }
    Ok(g)
}

impl GraphTopology {
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edge list with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS distances from `src`; `None` for unreachable nodes (only possible
    /// for graphs under construction, a finished value is connected).
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distances(&self, src: usize) -> Vec<u32> {
        self.bfs_distances(src)
            .into_iter()
            .map(|d| d.expect("connected graph"))
            .collect()
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        self.distances(v).into_iter().max().unwrap()
    }

    /// Smallest eccentricity over all nodes.
    pub fn radius(&self) -> u32 {
        (0..self.n()).map(|v| self.eccentricity(v)).min().unwrap()
    }

    pub fn diameter(&self) -> u32 {
        (0..self.n()).map(|v| self.eccentricity(v)).max().unwrap()
    }

    /// Nodes of minimum eccentricity, ascending.
    pub fn centers(&self) -> Vec<usize> {
        let ecc: Vec<u32> = (0..self.n()).map(|v| self.eccentricity(v)).collect();
        let r = *ecc.iter().min().unwrap();
        (0..self.n()).filter(|&v| ecc[v] == r).collect()
    }

    /// A connected graph is a tree iff it has n-1 edges.
    pub fn is_tree(&self) -> bool {
        self.m() == self.n() - 1
    }

    pub fn has_cycle(&self) -> bool {
        !self.is_tree()
    }

    /// A proper 2-coloring by BFS parity, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let colors: Vec<bool> = self.distances(0).iter().map(|d| d % 2 == 1).collect();
        for (u, v) in self.edges() {
            if colors[u] == colors[v] {
                return None;
            }
        }
        Some(colors)
    }

    /// Relabels nodes: node `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> GraphTopology {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        build_graph(self.n(), &edges).expect("relabeling preserves validity")
    }
}

pub fn path(n: usize) -> GraphTopology {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    build_graph(n, &edges).expect("path")
}

pub fn cycle(n: usize) -> GraphTopology {
    assert!(n >= 3, "cycles need at least 3 nodes");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build_graph(n, &edges).expect("cycle")
}

/// Star with center 0 and `n - 1` leaves.
pub fn star(n: usize) -> GraphTopology {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    build_graph(n, &edges).expect("star")
}

pub fn complete(n: usize) -> GraphTopology {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build_graph(n, &edges).expect("complete")
}

/// Serde mirror: `{n, edges}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for GraphTopology {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n(),
            edges: self.edges(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GraphTopology {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(de)?;
        build_graph(raw.n, &raw.edges).map_err(serde::de::Error::custom)
    }
}

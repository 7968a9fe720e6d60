//! Isomorphism utilities: canonical forms, automorphisms, tree codes.

use crate::graph::topology::{GraphError, GraphTopology};

/// Largest size for exact canonical forms (the n^2 matrix must fit in 64 bits
/// and all n! orderings are scanned).
pub const CANONICAL_CAP: usize = 8;

/// Canonical form of a graph: the minimum row-major adjacency-matrix
/// bit-string over all node orderings. Equal forms iff isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

fn matrix_bits(g: &GraphTopology, order: &[usize]) -> u64 {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut bits = 0u64;
    for (u, v) in g.edges() {
        let (p, q) = (pos[u], pos[v]);
        bits |= 1 << (n * n - 1 - (p * n + q));
        bits |= 1 << (n * n - 1 - (q * n + p));
    }
    bits
}

pub fn canonical_form(g: &GraphTopology) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(GraphError::CapExceeded {
            n,
            cap: CANONICAL_CAP,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    // Heap's algorithm over node orderings.
    let mut c = vec![0usize; n];
    best = best.min(matrix_bits(g, &order));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.min(matrix_bits(g, &order));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm { n, bits: best })
}

/// Exact isomorphism test via canonical forms; capped at [`CANONICAL_CAP`].
pub fn graphs_isomorphic(a: &GraphTopology, b: &GraphTopology) -> Result<bool, GraphError> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// A bijection on node indices; `apply[v]` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Option<Permutation> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation(map))
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_automorphism_of(&self, g: &GraphTopology) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| g.has_edge(self.apply(u), self.apply(v)))
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &img)| v != img)
    }
}

/// Searches for an automorphism without fixed points by backtracking in
/// neighborhood-constrained order. Returns the first one found.
pub fn find_fpf_automorphism(g: &GraphTopology) -> Option<Permutation> {
    let n = g.n();
    if n == 1 {
        return None;
    }
    // Assign images in BFS order so each new node (after the first) has a
    // mapped neighbor constraining its candidates.
    let order: Vec<usize> = {
        let dist = g.distances(0);
        let mut o: Vec<usize> = (0..n).collect();
        o.sort_by_key(|&v| (dist[v], v));
        o
    };
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn descend(
        g: &GraphTopology,
        order: &[usize],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        step: usize,
    ) -> bool {
        if step == order.len() {
            return true;
        }
        let v = order[step];
        for cand in 0..g.n() {
            if used[cand] || cand == v || g.degree(cand) != g.degree(v) {
                continue;
            }
            let ok = g.neighbors(v).iter().all(|&u| {
                image[u] == usize::MAX || g.has_edge(cand, image[u])
            });
            if !ok {
                continue;
            }
            image[v] = cand;
            used[cand] = true;
            if descend(g, order, image, used, step + 1) {
                return true;
            }
            image[v] = usize::MAX;
            used[cand] = false;
        }
        false
    }
    if descend(g, &order, &mut image, &mut used, 0) {
        let p = Permutation::new(image).expect("backtracking yields a bijection");
        debug_assert!(p.is_automorphism_of(g) && p.is_fixed_point_free());
        Some(p)
    } else {
        None
    }
}

/// Canonical code of a rooted tree: children ordered by their own codes, each
/// child contributing `1 <child code> 0`. The code of the root has length
/// 2(n-1) and two rooted trees are isomorphic iff their codes are equal.
pub fn rooted_tree_code(g: &GraphTopology, root: usize) -> Vec<u8> {
    assert!(g.is_tree(), "rooted codes are defined on trees");
    subtree_code(g, root, None)
}

/// Code of the subtree hanging below `v` when its parent is `parent`.
pub(crate) fn subtree_code(g: &GraphTopology, v: usize, parent: Option<usize>) -> Vec<u8> {
    let mut child_codes: Vec<Vec<u8>> = g
        .neighbors(v)
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| subtree_code(g, u, Some(v)))
        .collect();
    child_codes.sort();
    let mut out = Vec::new();
    for c in child_codes {
        out.push(b'1');
        out.extend(c);
        out.push(b'0');
    }
    out
}

pub fn rooted_trees_isomorphic(
    a: &GraphTopology,
    ra: usize,
    b: &GraphTopology,
    rb: usize,
) -> bool {
    a.n() == b.n() && rooted_tree_code(a, ra) == rooted_tree_code(b, rb)
}

/// Free-tree isomorphism: root both trees at their centers and compare the
/// best rooted code. Works at any size.
pub fn trees_isomorphic(a: &GraphTopology, b: &GraphTopology) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let best = |g: &GraphTopology| {
        g.centers()
            .into_iter()
            .map(|c| rooted_tree_code(g, c))
            .min()
            .unwrap()
    };
    best(a) == best(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::topology::{build_graph, complete, cycle, path, star};
    use itertools::Itertools;

    /// Oracle: scan all n! permutations for an automorphism / isomorphism.
    fn fpf_exists_brute(g: &GraphTopology) -> bool {
        (0..g.n()).permutations(g.n()).any(|p| {
            let p = Permutation::new(p).unwrap();
            p.is_fixed_point_free() && p.is_automorphism_of(g)
        })
    }

    fn isomorphic_brute(a: &GraphTopology, b: &GraphTopology) -> bool {
        a.n() == b.n()
            && a.m() == b.m()
            && (0..a.n()).permutations(a.n()).any(|p| {
                a.edges()
                    .iter()
                    .all(|&(u, v)| b.has_edge(p[u], p[v]))
            })
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        for g in [path(5), cycle(6), star(5), complete(4)] {
            let base = canonical_form(&g).unwrap();
            for p in (0..g.n()).permutations(g.n()).step_by(7) {
                assert_eq!(canonical_form(&g.relabel(&p)).unwrap(), base);
            }
        }
    }

    #[test]
    fn canonical_form_separates_non_isomorphic_graphs() {
        let graphs = [path(4), star(4), cycle(4), complete(4)];
        for (i, a) in graphs.iter().enumerate() {
            for (j, b) in graphs.iter().enumerate() {
                assert_eq!(
                    graphs_isomorphic(a, b).unwrap(),
                    i == j,
                    "{a:?} vs {b:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_form_matches_brute_force_isomorphism() {
        // all connected graphs on 4 nodes, pairwise
        let mut graphs = Vec::new();
        let all_pairs: Vec<(usize, usize)> =
            (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << all_pairs.len()) {
            let edges: Vec<_> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if let Ok(g) = build_graph(4, &edges) {
                graphs.push(g);
            }
        }
        for a in &graphs {
            for b in &graphs {
                assert_eq!(graphs_isomorphic(a, b).unwrap(), isomorphic_brute(a, b));
            }
        }
    }

    #[test]
    fn canonical_form_respects_the_cap() {
        let g = path(9);
        assert!(matches!(
            canonical_form(&g),
            Err(GraphError::CapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn fpf_examples() {
        // K2 swaps; P3 pins its center; P4 reverses with no fixed point.
        assert!(find_fpf_automorphism(&path(2)).is_some());
        assert!(find_fpf_automorphism(&path(3)).is_none());
        let p = find_fpf_automorphism(&path(4)).unwrap();
        assert!(p.is_automorphism_of(&path(4)) && p.is_fixed_point_free());
        assert!(fpf_exists_brute(&path(4)));
        assert!(find_fpf_automorphism(&star(4)).is_none());
        assert!(find_fpf_automorphism(&cycle(5)).is_some());
    }

    #[test]
    fn fpf_search_matches_brute_force_exhaustively() {
        use crate::graph::enumerate::{enumerate_instances, InstanceKind};
        for n in 1..=6 {
            for g in enumerate_instances(InstanceKind::ConnectedGraphs, n, 8).unwrap() {
                let found = find_fpf_automorphism(&g);
                assert_eq!(found.is_some(), fpf_exists_brute(&g), "{g:?}");
                if let Some(p) = found {
                    assert!(p.is_automorphism_of(&g) && p.is_fixed_point_free());
                }
            }
        }
    }

    #[test]
    fn rooted_codes_distinguish_roots() {
        let p3 = path(3);
        assert_eq!(rooted_tree_code(&p3, 1), b"1010");
        assert_eq!(rooted_tree_code(&p3, 0), b"1100");
        assert_eq!(rooted_tree_code(&p3, 0).len(), 2 * (p3.n() - 1));
        assert!(rooted_trees_isomorphic(&p3, 0, &p3, 2));
        assert!(!rooted_trees_isomorphic(&p3, 0, &p3, 1));
        assert!(trees_isomorphic(&path(4), &path(4).relabel(&[3, 1, 0, 2])));
        assert!(!trees_isomorphic(&path(4), &star(4)));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 0, 2]).is_some());
        assert!(Permutation::new(vec![1, 1, 2]).is_none());
        assert!(Permutation::new(vec![1, 3, 0]).is_none());
    }
}

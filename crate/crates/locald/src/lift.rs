//! Lifts: blow-ups of a small quotient configuration that no radius-1 rule
//! can tell apart from honest structure.
//!
//! A labeling `λ` of a configuration over a quotient is a *lift* when every
//! node's input matches its image's input and `λ` restricted to each
//! neighborhood is a bijection onto the image's neighborhood. These are
//! radius-1-checkable conditions with global teeth: once they hold
//! everywhere, all fibers share one size `l`, node count and input counts
//! scale by exactly `l`, degree and input are constant on fibers, any lift
//! with `l ≥ 2` contains a cycle — so a connected lift of a tree is the tree
//! itself — and the configuration splits into `l` connected transversals
//! that each map bijectively onto the quotient.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::cert::quotient_decode;
use crate::graph::{build_graph, Configuration, GraphTopology, RadiusView};
use crate::lang::{member, LanguageId};
use crate::runtime::{LocalVerifier, Verdict};

/// A claimed lift structure: the quotient configuration and one image label
/// per configuration node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftLabeling {
    pub quotient: Configuration,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("labeling has {got} labels for {want} nodes")]
    LengthMismatch { got: usize, want: usize },
    #[error("label {label} at node {node} exceeds quotient size {size}")]
    LabelOutOfRange {
        node: usize,
        label: usize,
        size: usize,
    },
    #[error("lift conditions fail at node {0}")]
    LiftCheckFailed(usize),
}

/// Evaluates the lift conditions as a radius-`t` rule: node `v` checks the
/// input condition for everything in its view and the neighborhood-bijection
/// condition (degree equality plus injectivity) for every node it sees in
/// full, i.e. at distance at most `t-1`. Structural defects of the labeling
/// itself are errors, condition failures are per-node rejections.
pub fn check_lift(
    config: &Configuration,
    labeling: &LiftLabeling,
    t: u32,
) -> Result<Verdict, LiftError> {
    let n = config.n();
    if labeling.labels.len() != n {
        return Err(LiftError::LengthMismatch {
            got: labeling.labels.len(),
            want: n,
        });
    }
    let q = &labeling.quotient;
    let qg = q.topology();
    for (node, &label) in labeling.labels.iter().enumerate() {
        if label >= q.n() {
            return Err(LiftError::LabelOutOfRange {
                node,
                label,
                size: q.n(),
            });
        }
    }
    let g = config.topology();
    let lambda = &labeling.labels;
    let node_ok = |u: usize| -> bool {
        config.input(u) == q.input(lambda[u])
    };
    let neighborhood_ok = |u: usize| -> bool {
        if g.degree(u) != qg.degree(lambda[u]) {
            return false;
        }
        let mut seen = vec![false; q.n()];
        for &w in g.neighbors(u) {
            if !qg.has_edge(lambda[u], lambda[w]) || seen[lambda[w]] {
                return false;
            }
            seen[lambda[w]] = true;
        }
        true
    };
    let per_node = (0..n)
        .map(|v| {
            let dist = g.distances(v);
            (0..n).all(|u| {
                let d = dist[u];
                (d > t || node_ok(u)) && (d + 1 > t || neighborhood_ok(u))
            })
        })
        .collect();
    Ok(Verdict { per_node })
}

/// Convenience: do the radius-1 lift conditions hold everywhere?
pub fn is_lift(config: &Configuration, labeling: &LiftLabeling) -> Result<bool, LiftError> {
    Ok(check_lift(config, labeling, 1)?.global())
}

/// Fibers of an accepted lift labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberStats {
    /// Configuration nodes over each quotient node, ascending.
    pub fibers: Vec<Vec<usize>>,
}

impl FiberStats {
    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(Vec::len).collect()
    }

    /// The common fiber size, when the fibers do share one.
    pub fn multiplicity(&self) -> Option<usize> {
        let sizes = self.fiber_sizes();
        let first = *sizes.first()?;
        sizes.iter().all(|&s| s == first).then_some(first)
    }
}

/// Groups nodes by image. Errs unless the radius-1 lift conditions hold
/// everywhere, so on success the fiber lemmas apply.
pub fn fiber_stats(
    config: &Configuration,
    labeling: &LiftLabeling,
) -> Result<FiberStats, LiftError> {
    let verdict = check_lift(config, labeling, 1)?;
    if let Some(node) = verdict.first_rejecting() {
        return Err(LiftError::LiftCheckFailed(node));
    }
    let mut fibers = vec![Vec::new(); labeling.quotient.n()];
    for (v, &label) in labeling.labels.iter().enumerate() {
        fibers[label].push(v);
    }
    Ok(FiberStats { fibers })
}

/// Splits an accepted lift into `l` connected transversals, each mapped
/// bijectively onto the quotient by the labeling.
///
/// Quotient nodes are processed in breadth-first order from node 0; the
/// transversals are seeded with the fiber of that start node and grown in
/// lockstep: for the next quotient node `q_m`, each transversal finds its
/// member over the earliest already-processed quotient neighbor `q_p` of
/// `q_m` and adopts that member's unique neighbor labeled `q_m`. Uniqueness
/// is the injectivity half of the lift conditions; two transversals can
/// never adopt the same node, since that node would have two distinct
/// neighbors sharing the label `q_p`, violating injectivity at the adoptee.
pub fn quotient_partition(
    config: &Configuration,
    labeling: &LiftLabeling,
) -> Result<Vec<Vec<usize>>, LiftError> {
    let stats = fiber_stats(config, labeling)?;
    let q = labeling.quotient.topology();
    let dist = q.distances(0);
    let mut order: Vec<usize> = (0..q.n()).collect();
    order.sort_by_key(|&m| (dist[m], m));

    let g = config.topology();
    let lambda = &labeling.labels;
    let mut groups: Vec<Vec<usize>> = stats.fibers[order[0]]
        .iter()
        .map(|&seed| vec![seed])
        .collect();
    // where each group's member over a given quotient node sits
    let mut member_over: Vec<Vec<Option<usize>>> =
        vec![vec![None; q.n()]; groups.len()];
    for (j, group) in groups.iter().enumerate() {
        member_over[j][order[0]] = Some(group[0]);
    }
    for (step, &qm) in order.iter().enumerate().skip(1) {
        let qp = order[..step]
            .iter()
            .copied()
            .find(|&p| q.has_edge(p, qm))
            .expect("breadth-first order reaches each node from a processed neighbor");
        for (j, group) in groups.iter_mut().enumerate() {
            let anchor = member_over[j][qp].expect("processed quotient nodes are populated");
            let adopted = g
                .neighbors(anchor)
                .iter()
                .copied()
                .find(|&w| lambda[w] == qm)
                .expect("lift conditions guarantee a neighbor over each quotient neighbor");
            group.push(adopted);
            member_over[j][qm] = Some(adopted);
        }
    }
    Ok(groups)
}

/// Builds a random `l`-fold cover of a base configuration: node `(v, i)`
/// becomes index `v*l + i`, and every base edge is blown up into a random
/// perfect matching between the fibers. Permutations are redrawn until the
/// result is connected, so bases whose covers disconnect for `l ≥ 2` —
/// trees — are only accepted with `l = 1`.
pub fn build_cover(base: &Configuration, l: usize, seed: u64) -> (Configuration, LiftLabeling) {
    assert!(l >= 1, "multiplicity must be positive");
    assert!(
        l == 1 || !base.topology().is_tree(),
        "a connected cover of a tree has multiplicity 1"
    );
    let bg = base.topology();
    let n = bg.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::new();
        for (u, w) in bg.edges() {
            let mut perm: Vec<usize> = (0..l).collect();
            for i in (1..l).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            for (i, &pi) in perm.iter().enumerate() {
                edges.push((u * l + i, w * l + pi));
            }
        }
        let Ok(g) = build_graph(n * l, &edges) else {
            continue; // disconnected draw; try fresh matchings
        };
        let inputs = (0..n * l).map(|x| base.input(x / l).clone()).collect();
        let config = Configuration::new(g, inputs).expect("one input per node");
        let labels = (0..n * l).map(|x| x / l).collect();
        let labeling = LiftLabeling {
            quotient: base.clone(),
            labels,
        };
        debug_assert_eq!(is_lift(&config, &labeling), Ok(true));
        return (config, labeling);
    }
}

/// Every labeling of `config` over `quotient` satisfying the pointwise lift
/// constraints (input consistency, degree equality, adjacency preservation,
/// per-neighborhood injectivity), together with the quotient inputs each one
/// induces. Any labeling that some all-accepting certificate assignment
/// could describe appears here, because the constraints enforced during the
/// search are consequences of every node accepting.
pub fn enumerate_lift_labelings(
    config: &Configuration,
    quotient: &GraphTopology,
) -> Vec<(Vec<usize>, Vec<BitString>)> {
    let g = config.topology();
    let n = g.n();
    let qn = quotient.n();

    // breadth-first order ensures each later node has an earlier neighbor
    let order: Vec<usize> = {
        let dist = g.distances(0);
        let mut o: Vec<usize> = (0..n).collect();
        o.sort_by_key(|&v| (dist[v], v));
        o
    };

    let mut lambda = vec![usize::MAX; n];
    // quotient input forced so far, by the nodes mapped onto each image
    let mut forced: Vec<Option<BitString>> = vec![None; qn];
    let mut out = Vec::new();

    fn consistent(
        config: &Configuration,
        g: &GraphTopology,
        quotient: &GraphTopology,
        lambda: &[usize],
        forced: &[Option<BitString>],
        v: usize,
        q: usize,
    ) -> bool {
        if g.degree(v) != quotient.degree(q) {
            return false;
        }
        if let Some(w) = &forced[q] {
            if w != config.input(v) {
                return false;
            }
        }
        for &x in g.neighbors(v) {
            if lambda[x] == usize::MAX {
                continue;
            }
            if !quotient.has_edge(q, lambda[x]) {
                return false;
            }
            // injectivity at x: no sibling of v through x already has image q
            if g
                .neighbors(x)
                .iter()
                .any(|&y| y != v && lambda[y] == q)
            {
                return false;
            }
        }
        true
    }

    fn descend(
        config: &Configuration,
        g: &GraphTopology,
        quotient: &GraphTopology,
        order: &[usize],
        step: usize,
        lambda: &mut Vec<usize>,
        forced: &mut Vec<Option<BitString>>,
        out: &mut Vec<(Vec<usize>, Vec<BitString>)>,
    ) {
        if step == order.len() {
            let inputs = forced
                .iter()
                .map(|w| w.clone().expect("complete labelings are surjective"))
                .collect();
            out.push((lambda.clone(), inputs));
            return;
        }
        let v = order[step];
        for q in 0..quotient.n() {
            if !consistent(config, g, quotient, lambda, forced, v, q) {
                continue;
            }
            let fresh = forced[q].is_none();
            lambda[v] = q;
            if fresh {
                forced[q] = Some(config.input(v).clone());
            }
            descend(config, g, quotient, order, step + 1, lambda, forced, out);
            lambda[v] = usize::MAX;
            if fresh {
                forced[q] = None;
            }
        }
    }

    descend(
        config, g, quotient, &order, 0, &mut lambda, &mut forced, &mut out,
    );
    out
}

/// The quotient-certificate verifier for a language: every node announces a
/// quotient configuration and its own image in it, then checks that the
/// quotient is a member, that its neighbors announce the very same quotient,
/// that its input matches its image's, and that its neighbors' images run
/// over its image's quotient neighborhood without repetition (together with
/// degree equality, a bijection).
///
/// Complete for any language via self-lifts whenever members certify
/// themselves; sound for any language closed under lifting, because an
/// accepted run makes the configuration a lift of the announced member.
pub fn universal_lift_verifier(lang: LanguageId) -> LocalVerifier {
    LocalVerifier::new(
        format!("verifier:lift:{}", lang.cli_name()),
        1,
        false,
        move |view: &RadiusView| {
            let r = view.root();
            let Some(cert) = view.cert(r) else {
                return false;
            };
            let Ok((quotient, label)) = quotient_decode(cert) else {
                return false;
            };
            if !member(lang, &quotient) {
                return false;
            }
            if view.input(r) != quotient.input(label) {
                return false;
            }
            let qg = quotient.topology();
            if view.degree(r) != qg.degree(label) {
                return false;
            }
            let mut seen = vec![false; quotient.n()];
            for &u in view.neighbors(r) {
                let Some(cu) = view.cert(u) else {
                    return false;
                };
                let Ok((qu, lu)) = quotient_decode(cu) else {
                    return false;
                };
                if qu != quotient || !qg.has_edge(label, lu) || seen[lu] {
                    return false;
                }
                seen[lu] = true;
            }
            true
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstr;
    use crate::cert::quotient_encode;
    use crate::graph::{complete, cycle, path, IdAssignment};
    use crate::runtime::run_verifier;

    fn alternating(n: usize) -> Vec<BitString> {
        (0..n)
            .map(|v| BitString::from_value_width(v as u64 % 2, 1))
            .collect()
    }

    #[test]
    fn hexagon_is_a_double_cover_of_the_triangle() {
        let c6 = Configuration::with_empty_inputs(cycle(6));
        let labeling = LiftLabeling {
            quotient: Configuration::with_empty_inputs(complete(3)),
            labels: (0..6).map(|v| v % 3).collect(),
        };
        assert_eq!(is_lift(&c6, &labeling), Ok(true));
        let stats = fiber_stats(&c6, &labeling).unwrap();
        assert_eq!(stats.fiber_sizes(), vec![2, 2, 2]);
        assert_eq!(stats.multiplicity(), Some(2));
        assert_eq!(
            quotient_partition(&c6, &labeling).unwrap(),
            vec![vec![0, 1, 5], vec![3, 4, 2]]
        );
    }

    #[test]
    fn degree_mismatch_sinks_the_square_over_an_edge() {
        // (C4, 0101) is NOT a lift of (K2, (0,1)) under v mod 2: every node
        // has two neighbors but its image has one, so the neighborhood map
        // cannot be a bijection and every node fails the radius-1 check.
        let c4 = Configuration::new(cycle(4), alternating(4)).unwrap();
        let k2 = Configuration::new(path(2), vec![bitstr!("0"), bitstr!("1")]).unwrap();
        let labeling = LiftLabeling {
            quotient: k2,
            labels: vec![0, 1, 0, 1],
        };
        let verdict = check_lift(&c4, &labeling, 1).unwrap();
        assert!(verdict.per_node.iter().all(|&b| !b));
    }

    #[test]
    fn self_lift_always_passes() {
        for config in [
            Configuration::new(cycle(4), alternating(4)).unwrap(),
            Configuration::with_empty_inputs(path(5)),
            Configuration::with_empty_inputs(complete(4)),
        ] {
            let labeling = LiftLabeling {
                quotient: config.clone(),
                labels: (0..config.n()).collect(),
            };
            assert_eq!(is_lift(&config, &labeling), Ok(true));
            let stats = fiber_stats(&config, &labeling).unwrap();
            assert_eq!(stats.multiplicity(), Some(1));
        }
    }

    #[test]
    fn labeling_shape_errors() {
        let c4 = Configuration::with_empty_inputs(cycle(4));
        let quotient = Configuration::with_empty_inputs(path(2));
        assert_eq!(
            check_lift(
                &c4,
                &LiftLabeling {
                    quotient: quotient.clone(),
                    labels: vec![0, 1],
                },
                1
            ),
            Err(LiftError::LengthMismatch { got: 2, want: 4 })
        );
        assert_eq!(
            check_lift(
                &c4,
                &LiftLabeling {
                    quotient,
                    labels: vec![0, 1, 0, 7],
                },
                1
            ),
            Err(LiftError::LabelOutOfRange {
                node: 3,
                label: 7,
                size: 2
            })
        );
    }

    #[test]
    fn labeling_enumeration_counts_for_the_hexagon() {
        let c6 = Configuration::with_empty_inputs(cycle(6));
        assert_eq!(enumerate_lift_labelings(&c6, &complete(3)).len(), 6);
        assert_eq!(enumerate_lift_labelings(&c6, &cycle(6)).len(), 12);
        assert_eq!(enumerate_lift_labelings(&c6, &path(2)).len(), 0);
        assert_eq!(enumerate_lift_labelings(&c6, &path(3)).len(), 0);
        assert_eq!(enumerate_lift_labelings(&c6, &path(1)).len(), 0);
        // every found labeling satisfies the full radius-1 conditions
        for (labels, inputs) in enumerate_lift_labelings(&c6, &complete(3)) {
            let quotient = Configuration::new(complete(3), inputs).unwrap();
            assert_eq!(is_lift(&c6, &LiftLabeling { quotient, labels }), Ok(true));
        }
    }

    #[test]
    fn enumeration_respects_inputs() {
        // alternating inputs on C6 clash with any triangle quotient: some
        // fiber must carry both a 0 and a 1
        let c6 = Configuration::new(cycle(6), alternating(6)).unwrap();
        assert_eq!(enumerate_lift_labelings(&c6, &complete(3)).len(), 0);
        // but the inputs 001001 wrap consistently
        let inputs: Vec<BitString> = "001001"
            .chars()
            .map(|c| BitString::from_value_width((c == '1') as u64, 1))
            .collect();
        let c6 = Configuration::new(cycle(6), inputs).unwrap();
        let found = enumerate_lift_labelings(&c6, &complete(3));
        assert!(!found.is_empty());
        for (_, inputs) in found {
            let ones = inputs.iter().filter(|w| w.as_single_bit() == Some(true)).count();
            assert_eq!(ones, 1, "each transversal sees exactly one 1");
        }
    }

    #[test]
    fn random_covers_satisfy_the_lift_conditions() {
        let bowtie = build_graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 2)]).unwrap();
        let bases = [
            Configuration::with_empty_inputs(complete(3)),
            Configuration::new(cycle(4), alternating(4)).unwrap(),
            Configuration::with_empty_inputs(bowtie),
        ];
        for (b, base) in bases.iter().enumerate() {
            for l in 1..=3 {
                for seed in 0..5 {
                    let (cover, labeling) = build_cover(base, l, seed + 100 * b as u64);
                    assert_eq!(cover.n(), l * base.n());
                    let stats = fiber_stats(&cover, &labeling).unwrap();
                    assert_eq!(stats.multiplicity(), Some(l));
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "cover of a tree")]
    fn tree_bases_refuse_proper_covers() {
        build_cover(&Configuration::with_empty_inputs(path(3)), 2, 0);
    }

    #[test]
    fn quotient_verifier_accepts_self_lifts_and_rejects_thin_quotients() {
        let verifier = universal_lift_verifier(LanguageId::EqSizePartition);
        let c4 = Configuration::new(cycle(4), alternating(4)).unwrap();
        let ids = IdAssignment::canonical(4);

        let honest: Vec<BitString> = (0..4).map(|v| quotient_encode(&c4, v)).collect();
        assert!(run_verifier(&verifier, &c4, &ids, &honest).unwrap().global());

        // the (K2,(0,1)) story: a balanced quotient, but the neighborhood
        // bijection fails on degrees, so every node rejects
        let k2 = Configuration::new(path(2), vec![bitstr!("0"), bitstr!("1")]).unwrap();
        let thin: Vec<BitString> = (0..4).map(|v| quotient_encode(&k2, v % 2)).collect();
        let verdict = run_verifier(&verifier, &c4, &ids, &thin).unwrap();
        assert!(verdict.per_node.iter().all(|&b| !b));

        // an unbalanced self-lift is rejected by the membership check
        let skew = Configuration::new(
            cycle(4),
            vec![bitstr!("0"), bitstr!("0"), bitstr!("0"), bitstr!("1")],
        )
        .unwrap();
        let cheat: Vec<BitString> = (0..4).map(|v| quotient_encode(&skew, v)).collect();
        let verdict = run_verifier(&verifier, &skew, &ids, &cheat).unwrap();
        assert!(!verdict.global());
    }
}

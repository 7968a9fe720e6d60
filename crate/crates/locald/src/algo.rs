//! The algorithm catalog: concrete local deciders and certificate verifiers
//! for the language zoo, plus the default cheating-prover spaces used to
//! test their soundness.

use crate::cert::{distance_decode, symmetry_decode};
use crate::graph::{find_fpf_automorphism, RadiusView};
use crate::lang::LanguageId;
use crate::lift::universal_lift_verifier;
use crate::runtime::{LocalDecider, LocalVerifier};
use crate::search::{CertSpace, LiftCodec};

/// Recognises configurations whose graph is a tree with some node within
/// distance `t` of everything, by looking `t+1` hops out: a node accepts
/// when its own input is empty, its view contains no cycle, and no two
/// nodes it sees are more than `2t` apart inside the view.
///
/// Seeing to `t+1` is what makes the rule exact — a cycle of length `2t+2`
/// still looks path-like to every node at radius `t`, but at `t+1` either
/// the cycle closes inside some view or two view-nodes sit too far apart.
pub fn tree_radius_decider(t: u32) -> LocalDecider {
    LocalDecider::new(
        format!("decider:{}", LanguageId::TreeRadius(t).cli_name()),
        t + 1,
        false,
        move |view: &RadiusView| {
            view.input(view.root()).is_empty()
                && view.is_tree()
                && view.max_pairwise_distance() <= 2 * t
        },
    )
}

/// Verifies treeness from distance certificates: each node's certificate
/// claims its distance to a fixed root. A node carrying 0 demands that all
/// neighbors carry 1; a node carrying `d > 0` demands exactly one neighbor
/// at `d-1` and the rest at `d+1`.
///
/// When every node accepts, the minimum carried value must be 0 (a positive
/// minimum would need a smaller neighbor), every edge joins consecutive
/// values, and each positive node has exactly one downward edge — so edges
/// number `n` minus the count of zero nodes, and a connected graph with at
/// most `n-1` edges is a tree.
pub fn tree_verifier() -> LocalVerifier {
    LocalVerifier::new(
        format!("verifier:{}", LanguageId::Tree.cli_name()),
        1,
        false,
        |view: &RadiusView| {
            let r = view.root();
            if !view.input(r).is_empty() {
                return false;
            }
            let Some(mine) = view.cert(r).and_then(distance_decode) else {
                return false;
            };
            let mut down = 0usize;
            for &u in view.neighbors(r) {
                let Some(theirs) = view.cert(u).and_then(distance_decode) else {
                    return false;
                };
                if mine == 0 {
                    if theirs != 1 {
                        return false;
                    }
                } else if theirs + 1 == mine {
                    down += 1;
                } else if theirs != mine + 1 {
                    return false;
                }
            }
            mine == 0 || down == 1
        },
    )
}

/// Verifies that the configuration is a tree admitting a fixed-point-free
/// automorphism. Every certificate spells out the same indexed tree (as a
/// canonical descend/ascend walk) plus the node's own position in it; each
/// node checks the walk is well-formed, the decoded tree has the symmetry,
/// its degree matches its claimed position, and its neighbors claim exactly
/// the positions adjacent to its own, without repetition.
///
/// An accepting run makes the configuration a lift of the decoded tree, and
/// a connected lift of a tree has multiplicity 1 — so the configuration
/// *is* that tree, position for position, and the symmetry check at any
/// node settles membership.
pub fn fpf_tree_verifier() -> LocalVerifier {
    LocalVerifier::new(
        format!("verifier:{}", LanguageId::FpfSymmetryOnTrees.cli_name()),
        1,
        false,
        |view: &RadiusView| {
            let r = view.root();
            if !view.input(r).is_empty() {
                return false;
            }
            let Some(cert) = view.cert(r) else {
                return false;
            };
            let Ok((tree, rank)) = symmetry_decode(cert) else {
                return false;
            };
            if find_fpf_automorphism(&tree).is_none() {
                return false;
            }
            if view.degree(r) != tree.degree(rank) {
                return false;
            }
            let mut seen = vec![false; tree.n()];
            for &u in view.neighbors(r) {
                let Some(cu) = view.cert(u) else {
                    return false;
                };
                let Ok((their_tree, their_rank)) = symmetry_decode(cu) else {
                    return false;
                };
                if their_tree != tree
                    || !tree.has_edge(rank, their_rank)
                    || seen[their_rank]
                {
                    return false;
                }
                seen[their_rank] = true;
            }
            true
        },
    )
}

/// Verifies balanced 0/1 inputs through quotient certificates: every node
/// announces one balanced quotient configuration and its image in it, and
/// checks the lift conditions against its neighbors. Balance survives
/// lifting — all fibers share one size, so input counts scale together —
/// which is exactly the soundness requirement.
pub fn eqsize_verifier() -> LocalVerifier {
    let mut v = universal_lift_verifier(LanguageId::EqSizePartition);
    v.name = format!("verifier:{}", LanguageId::EqSizePartition.cli_name());
    v
}

/// Verifies two-colorability: each certificate is one color bit, checked
/// against all neighbors.
pub fn bipartite_verifier() -> LocalVerifier {
    LocalVerifier::new(
        format!("verifier:{}", LanguageId::Bipartite.cli_name()),
        1,
        false,
        |view: &RadiusView| {
            let r = view.root();
            if !view.input(r).is_empty() {
                return false;
            }
            let Some(mine) = view.cert(r) else {
                return false;
            };
            if mine.len() != 1 {
                return false;
            }
            view.neighbors(r).iter().all(|&u| {
                view.cert(u)
                    .map(|theirs| theirs.len() == 1 && theirs != mine)
                    .unwrap_or(false)
            })
        },
    )
}

/// The decider for a language, when one exists: only the radius-bounded
/// tree languages are locally decidable without certificates.
pub fn decider_for(lang: LanguageId) -> Option<LocalDecider> {
    match lang {
        LanguageId::TreeRadius(t) => Some(tree_radius_decider(t)),
        _ => None,
    }
}

/// The certificate verifier for a language. Locally decidable languages get
/// their decider lifted to a certificate-ignoring verifier.
pub fn verifier_for(lang: LanguageId) -> LocalVerifier {
    match lang {
        LanguageId::TreeRadius(t) => {
            let decider = tree_radius_decider(t);
            LocalVerifier::new(
                format!("verifier:{}", lang.cli_name()),
                decider.radius,
                decider.reads_ids,
                move |view: &RadiusView| decider.eval(view),
            )
        }
        LanguageId::Tree => tree_verifier(),
        LanguageId::FpfSymmetryOnTrees => fpf_tree_verifier(),
        LanguageId::EqSizePartition => eqsize_verifier(),
        LanguageId::Bipartite => bipartite_verifier(),
    }
}

/// The certificate space a cheating prover draws from when the verifier for
/// this language is put through a soundness search on an `n`-node
/// configuration. Each space covers everything its verifier could possibly
/// accept: the tree verifier inspects values (at most `n` on honest runs,
/// larger values only hurt the prover, and out-of-range encodings are
/// rejected outright), the two structured verifiers reject any vector that
/// does not spell out a pointwise-consistent lift, and the bipartite
/// verifier rejects certificates that are not single bits.
pub fn default_soundness_space(lang: LanguageId, n: usize) -> CertSpace {
    match lang {
        LanguageId::TreeRadius(_) => CertSpace::AllBitstringsUpTo(0),
        LanguageId::Tree => CertSpace::DistanceLabels(n as u64),
        LanguageId::FpfSymmetryOnTrees => CertSpace::StructuredLift {
            max_quotient_size: n,
            codec: LiftCodec::TreeCode,
        },
        LanguageId::EqSizePartition => CertSpace::StructuredLift {
            max_quotient_size: n,
            codec: LiftCodec::QuotientCode,
        },
        LanguageId::Bipartite => CertSpace::AllBitstringsUpTo(1),
    }
}

/// Every decider in the catalog.
pub fn catalog_deciders() -> Vec<(LanguageId, LocalDecider)> {
    (1..=3)
        .map(|t| {
            let lang = LanguageId::TreeRadius(t);
            (lang, decider_for(lang).expect("tree languages have deciders"))
        })
        .collect()
}

/// Every verifier in the catalog.
pub fn catalog_verifiers() -> Vec<(LanguageId, LocalVerifier)> {
    [
        LanguageId::TreeRadius(1),
        LanguageId::Tree,
        LanguageId::FpfSymmetryOnTrees,
        LanguageId::EqSizePartition,
        LanguageId::Bipartite,
    ]
    .into_iter()
    .map(|lang| (lang, verifier_for(lang)))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::make_certificate;
    use crate::graph::{
        build_graph, cycle, path, star, Configuration, IdAssignment, IdStrategy,
    };
    use crate::lang::{member, positive_instances};
    use crate::runtime::{run_decider, run_verifier};
    use crate::search::{soundness_search, SearchOptions};

    fn empty(g: crate::graph::GraphTopology) -> Configuration {
        Configuration::with_empty_inputs(g)
    }

    #[test]
    fn radius_decider_separates_shallow_from_deep() {
        let decider = tree_radius_decider(1);
        for (config, verdict) in [
            (empty(star(5)), true),
            (empty(path(3)), true),
            (empty(path(4)), false), // no node reaches both ends in one hop
            (empty(cycle(4)), false),
        ] {
            let ids = IdAssignment::canonical(config.n());
            assert_eq!(
                run_decider(&decider, &config, &ids).global(),
                verdict,
                "radius-1 verdict on {:?}",
                config.topology().edges()
            );
        }
        let spider = build_graph(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let ids = IdAssignment::canonical(7);
        assert!(!run_decider(&tree_radius_decider(1), &empty(spider.clone()), &ids).global());
        assert!(run_decider(&tree_radius_decider(2), &empty(spider), &ids).global());
    }

    #[test]
    fn honest_runs_accept_across_the_catalog() {
        for (lang, verifier) in catalog_verifiers() {
            for n in 1..=6 {
                for config in positive_instances(lang, n).unwrap() {
                    let certs = make_certificate(lang, &config)
                        .expect("members get certificates");
                    let ids = IdAssignment::canonical(config.n());
                    let verdict = run_verifier(&verifier, &config, &ids, &certs).unwrap();
                    assert!(
                        verdict.global(),
                        "{} rejects an honest member run",
                        verifier.name
                    );
                }
            }
        }
    }

    #[test]
    fn tree_verifier_rejects_wrong_distances() {
        let verifier = tree_verifier();
        let p3 = empty(path(3));
        let ids = IdAssignment::canonical(3);
        use crate::bitstr;
        // two claimed roots
        let certs = vec![bitstr!("0"), bitstr!("1"), bitstr!("0")];
        assert!(!run_verifier(&verifier, &p3, &ids, &certs).unwrap().global());
        // no claimed root: minimum is positive
        let certs = vec![bitstr!("10"), bitstr!("1"), bitstr!("10")];
        assert!(!run_verifier(&verifier, &p3, &ids, &certs).unwrap().global());
        // honest
        let certs = vec![bitstr!("1"), bitstr!("0"), bitstr!("1")];
        assert!(run_verifier(&verifier, &p3, &ids, &certs).unwrap().global());
    }

    #[test]
    fn symmetry_verifier_rejects_borrowed_certificates() {
        // a 3-path wearing certificates honestly generated for the 4-path:
        // the claimed tree has the symmetry, but positions cannot line up
        let verifier = fpf_tree_verifier();
        let p4 = empty(path(4));
        let honest = make_certificate(LanguageId::FpfSymmetryOnTrees, &p4).unwrap();
        let p3 = empty(path(3));
        let ids = IdAssignment::canonical(3);
        let borrowed = vec![honest[0].clone(), honest[1].clone(), honest[2].clone()];
        assert!(!run_verifier(&verifier, &p3, &ids, &borrowed).unwrap().global());
    }

    #[test]
    fn eqsize_verifier_checks_inputs_against_the_quotient() {
        use crate::bits::BitString;
        use crate::cert::quotient_encode;
        // all-zero inputs wearing certificates for the balanced square
        let zeros = Configuration::new(
            cycle(4),
            vec![BitString::from_value_width(0, 1); 4],
        )
        .unwrap();
        let balanced = Configuration::new(
            cycle(4),
            (0..4)
                .map(|v| BitString::from_value_width(v % 2, 1))
                .collect(),
        )
        .unwrap();
        let cheat: Vec<BitString> = (0..4).map(|v| quotient_encode(&balanced, v)).collect();
        let ids = IdAssignment::canonical(4);
        let verdict = run_verifier(&eqsize_verifier(), &zeros, &ids, &cheat).unwrap();
        assert!(!verdict.global());
    }

    #[test]
    fn bipartite_verifier_is_sound_on_small_odd_cycles() {
        for n in [3usize, 5] {
            let config = empty(cycle(n));
            let found = soundness_search(
                &bipartite_verifier(),
                &config,
                &default_soundness_space(LanguageId::Bipartite, n),
                &IdStrategy::AllPermutations,
                &SearchOptions::default(),
            )
            .unwrap();
            assert!(found.is_none(), "odd cycle {n} fooled the color check");
        }
    }

    #[test]
    fn verdicts_are_identifier_blind() {
        let config = empty(path(4));
        let certs = make_certificate(LanguageId::Tree, &config).unwrap();
        let verifier = tree_verifier();
        let baseline = run_verifier(
            &verifier,
            &config,
            &IdAssignment::canonical(4),
            &certs,
        )
        .unwrap();
        for ids in (IdStrategy::Sampled { count: 10, seed: 7 }).generate(4) {
            let verdict = run_verifier(&verifier, &config, &ids, &certs).unwrap();
            assert_eq!(verdict, baseline);
        }
    }

    #[test]
    fn catalog_membership_agrees_with_the_oracle() {
        // a decided language: decider verdict == membership on everything
        let decider = tree_radius_decider(2);
        for n in 1..=5 {
            for config in crate::lang::language_instances(LanguageId::TreeRadius(2), n).unwrap() {
                let ids = IdAssignment::canonical(config.n());
                assert_eq!(
                    run_decider(&decider, &config, &ids).global(),
                    member(LanguageId::TreeRadius(2), &config)
                );
            }
        }
    }
}

//! Executing local rules and checking them against ground truth.
//!
//! A decider reads bare views; a verifier reads views dressed with
//! certificates. Either way the global answer is the conjunction of the
//! per-node answers, and correctness is quantified over identifier
//! assignments. Rules that never look at identifiers say so via
//! [`LocalDecider::reads_ids`]/[`LocalVerifier::reads_ids`], which lets the
//! checkers collapse the identifier quantifier to a single assignment; the
//! claim itself is validated separately by the id-independence tests.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::BitString;
use crate::cert::CertificateVector;
use crate::graph::{ball, Configuration, IdAssignment, IdStrategy, RadiusView};
use crate::lang::{member, LanguageId};
use crate::search::{CertSpace, SearchError, SearchOptions};

type Rule = Arc<dyn Fn(&RadiusView) -> bool + Send + Sync>;

/// A radius-`radius` decision rule over bare views.
#[derive(Clone)]
pub struct LocalDecider {
    pub name: String,
    pub radius: u32,
    /// Whether the answer may depend on the identifiers in the view.
    pub reads_ids: bool,
    rule: Rule,
}

/// A radius-`radius` decision rule over certificate-dressed views.
#[derive(Clone)]
pub struct LocalVerifier {
    pub name: String,
    pub radius: u32,
    /// Whether the answer may depend on the identifiers in the view.
    pub reads_ids: bool,
    rule: Rule,
}

impl LocalDecider {
    pub fn new(
        name: impl Into<String>,
        radius: u32,
        reads_ids: bool,
        rule: impl Fn(&RadiusView) -> bool + Send + Sync + 'static,
    ) -> Self {
        LocalDecider {
            name: name.into(),
            radius,
            reads_ids,
            rule: Arc::new(rule),
        }
    }

    pub fn eval(&self, view: &RadiusView) -> bool {
        (self.rule)(view)
    }
}

impl LocalVerifier {
    pub fn new(
        name: impl Into<String>,
        radius: u32,
        reads_ids: bool,
        rule: impl Fn(&RadiusView) -> bool + Send + Sync + 'static,
    ) -> Self {
        LocalVerifier {
            name: name.into(),
            radius,
            reads_ids,
            rule: Arc::new(rule),
        }
    }

    pub fn eval(&self, view: &RadiusView) -> bool {
        (self.rule)(view)
    }
}

impl fmt::Debug for LocalDecider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalDecider({}, radius {})", self.name, self.radius)
    }
}

impl fmt::Debug for LocalVerifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalVerifier({}, radius {})", self.name, self.radius)
    }
}

/// Per-node accept/reject answers; the run is accepting when every node is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub per_node: Vec<bool>,
}

impl Verdict {
    pub fn global(&self) -> bool {
        self.per_node.iter().all(|&b| b)
    }

    pub fn first_rejecting(&self) -> Option<usize> {
        self.per_node.iter().position(|&b| !b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuntimeError {
    #[error("certificate vector has {got} entries for {want} nodes")]
    CertificateLengthMismatch { got: usize, want: usize },
}

/// Runs a decider: every node evaluates the rule on its bare view.
pub fn run_decider(
    decider: &LocalDecider,
    config: &Configuration,
    ids: &IdAssignment,
) -> Verdict {
    assert_eq!(ids.n(), config.n(), "identifier assignment size mismatch");
    Verdict {
        per_node: (0..config.n())
            .map(|v| decider.eval(&ball(config, ids, None, v, decider.radius)))
            .collect(),
    }
}

/// Runs a verifier: every node evaluates the rule on its certificate-dressed
/// view.
pub fn run_verifier(
    verifier: &LocalVerifier,
    config: &Configuration,
    ids: &IdAssignment,
    certs: &CertificateVector,
) -> Result<Verdict, RuntimeError> {
    assert_eq!(ids.n(), config.n(), "identifier assignment size mismatch");
    if certs.len() != config.n() {
        return Err(RuntimeError::CertificateLengthMismatch {
            got: certs.len(),
            want: config.n(),
        });
    }
    Ok(Verdict {
        per_node: (0..config.n())
            .map(|v| verifier.eval(&ball(config, ids, Some(certs), v, verifier.radius)))
            .collect(),
    })
}

/// Full-information flooding: what each node actually knows after `t` rounds
/// of neighbors exchanging everything they have. A node contributes its own
/// label from the start and its incident identifier pairs once the first
/// exchange has told it its neighbors' identifiers. The result coincides
/// with [`ball`] node for node — the invariant suite checks this — which is
/// exactly why the `t`-neighborhood omits edges joining two nodes at
/// distance `t`: no endpoint of such an edge can report it in time.
pub fn flood_views(
    config: &Configuration,
    ids: &IdAssignment,
    certs: Option<&[BitString]>,
    t: u32,
) -> Vec<RadiusView> {
    #[derive(Clone, Default)]
    struct Knowledge {
        labels: BTreeMap<u64, (BitString, Option<BitString>)>,
        edges: BTreeSet<(u64, u64)>,
    }

    let n = config.n();
    let g = config.topology();
    let mut know: Vec<Knowledge> = (0..n)
        .map(|v| {
            let mut k = Knowledge::default();
            k.labels.insert(
                ids.id(v),
                (config.input(v).clone(), certs.map(|c| c[v].clone())),
            );
            k
        })
        .collect();

    for round in 1..=t {
        let snapshot = know.clone();
        for v in 0..n {
            for &u in g.neighbors(v) {
                let incoming = &snapshot[u];
                for (id, payload) in &incoming.labels {
                    know[v].labels.entry(*id).or_insert_with(|| payload.clone());
                }
                know[v].edges.extend(incoming.edges.iter().copied());
            }
            if round == 1 {
                for &u in g.neighbors(v) {
                    let (a, b) = (ids.id(v), ids.id(u));
                    know[v].edges.insert((a.min(b), a.max(b)));
                }
            }
        }
    }

    (0..n)
        .map(|v| {
            let k = &know[v];
            let me = ids.id(v);
            let mut adj: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
            for &(a, b) in &k.edges {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
            let mut dist: BTreeMap<u64, u32> = BTreeMap::new();
            dist.insert(me, 0);
            let mut queue = VecDeque::from([me]);
            while let Some(x) = queue.pop_front() {
                let dx = dist[&x];
                for &y in adj.get(&x).into_iter().flatten() {
                    if k.labels.contains_key(&y) && !dist.contains_key(&y) {
                        dist.insert(y, dx + 1);
                        queue.push_back(y);
                    }
                }
            }
            let nodes = dist
                .iter()
                .map(|(&id, &d)| {
                    let (input, cert) = k.labels[&id].clone();
                    (d, id, input, cert)
                })
                .collect();
            let edges: Vec<(u64, u64)> = k
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| dist.contains_key(&a) && dist.contains_key(&b))
                .collect();
            RadiusView::assemble(nodes, &edges)
        })
        .collect()
}

/// A counterexample: the instance, the identifiers in force, the certificate
/// assignment involved (none for deciders), and the node that misbehaved
/// (none when the failure is a wrongful global accept).
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub config: Configuration,
    pub ids: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certs: Option<CertificateVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_node: Option<usize>,
}

/// Outcome of checking a rule against ground truth over a family of
/// instances. `completeness_witness` is a member that was wrongly rejected
/// (or could not be certified); `soundness_witness` is a non-member that was
/// wrongly accepted.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplianceReport {
    pub passed: bool,
    pub instances_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completeness_witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub soundness_witness: Option<Witness>,
}

impl ComplianceReport {
    fn clean(instances_checked: usize) -> Self {
        ComplianceReport {
            passed: true,
            instances_checked,
            completeness_witness: None,
            soundness_witness: None,
        }
    }
}

fn assignments(reads_ids: bool, strategy: &IdStrategy, n: usize) -> Vec<IdAssignment> {
    if reads_ids {
        strategy.generate(n)
    } else {
        vec![IdAssignment::canonical(n)]
    }
}

/// Checks that a decider decides a language exactly on the given instances:
/// members are accepted by every node under every identifier assignment,
/// non-members are rejected by at least one node under every assignment.
pub fn check_decides(
    decider: &LocalDecider,
    lang: LanguageId,
    instances: &[Configuration],
    strategy: &IdStrategy,
) -> ComplianceReport {
    let mut checked = 0;
    for config in instances {
        checked += 1;
        let is_member = member(lang, config);
        for ids in assignments(decider.reads_ids, strategy, config.n()) {
            let verdict = run_decider(decider, config, &ids);
            if verdict.global() == is_member {
                continue;
            }
            let witness = Witness {
                config: config.clone(),
                ids: ids.ids().to_vec(),
                certs: None,
                failing_node: verdict.first_rejecting(),
            };
            return ComplianceReport {
                passed: false,
                instances_checked: checked,
                completeness_witness: is_member.then(|| witness.clone()),
                soundness_witness: (!is_member).then_some(witness),
            };
        }
    }
    ComplianceReport::clean(checked)
}

/// Everything needed to judge a verifier: the rule, the language it claims
/// to verify, an honest prover, the space of certificate assignments a
/// cheating prover is allowed to draw from, and the identifier strategy.
pub struct VerificationSetup<'a> {
    pub verifier: &'a LocalVerifier,
    pub language: LanguageId,
    pub prover: &'a dyn Fn(&Configuration) -> Option<CertificateVector>,
    pub soundness_space: &'a CertSpace,
    pub id_strategy: IdStrategy,
    pub options: SearchOptions,
}

/// Checks completeness and soundness of a verifier over the given instances.
///
/// Completeness: on members, the honest certificates make every node accept
/// under every identifier assignment. Soundness: on non-members, every
/// certificate assignment in the soundness space leaves at least one
/// rejecting node under every identifier assignment.
pub fn check_verifies(
    setup: &VerificationSetup,
    instances: &[Configuration],
) -> Result<ComplianceReport, SearchError> {
    let mut checked = 0;
    for config in instances {
        checked += 1;
        let ids_list = assignments(setup.verifier.reads_ids, &setup.id_strategy, config.n());
        if member(setup.language, config) {
            let Some(certs) = (setup.prover)(config) else {
                return Ok(ComplianceReport {
                    passed: false,
                    instances_checked: checked,
                    completeness_witness: Some(Witness {
                        config: config.clone(),
                        ids: Vec::new(),
                        certs: None,
                        failing_node: None,
                    }),
                    soundness_witness: None,
                });
            };
            for ids in &ids_list {
                let verdict = run_verifier(setup.verifier, config, ids, &certs)
                    .expect("prover certificates are per-node");
                if !verdict.global() {
                    return Ok(ComplianceReport {
                        passed: false,
                        instances_checked: checked,
                        completeness_witness: Some(Witness {
                            config: config.clone(),
                            ids: ids.ids().to_vec(),
                            certs: Some(certs),
                            failing_node: verdict.first_rejecting(),
                        }),
                        soundness_witness: None,
                    });
                }
            }
        } else {
            let mut fooled: Option<Witness> = None;
            setup
                .soundness_space
                .for_each_vector(config, &setup.options, |certs| {
                    for ids in &ids_list {
                        let verdict = run_verifier(setup.verifier, config, ids, certs)
                            .expect("spaces produce per-node certificates");
                        if verdict.global() {
                            fooled = Some(Witness {
                                config: config.clone(),
                                ids: ids.ids().to_vec(),
                                certs: Some(certs.clone()),
                                failing_node: None,
                            });
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                })?;
            if let Some(witness) = fooled {
                return Ok(ComplianceReport {
                    passed: false,
                    instances_checked: checked,
                    completeness_witness: None,
                    soundness_witness: Some(witness),
                });
            }
        }
    }
    Ok(ComplianceReport::clean(checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstr;
    use crate::graph::{build_graph, cycle, path, star, views_isomorphic};

    fn eps(g: crate::graph::GraphTopology) -> Configuration {
        Configuration::with_empty_inputs(g)
    }

    fn degree_cap_rule() -> LocalDecider {
        LocalDecider::new("degree-at-most-2", 1, false, |view| {
            view.degree(view.root()) <= 2
        })
    }

    #[test]
    fn verdicts_are_per_node() {
        let d = degree_cap_rule();
        let g = star(4);
        let ids = IdAssignment::canonical(4);
        let verdict = run_decider(&d, &eps(g), &ids);
        assert_eq!(verdict.per_node, vec![false, true, true, true]);
        assert!(!verdict.global());
        assert_eq!(verdict.first_rejecting(), Some(0));
    }

    #[test]
    fn verifier_certificate_length_is_enforced() {
        let v = LocalVerifier::new("anything", 1, false, |_| true);
        let config = eps(path(3));
        let ids = IdAssignment::canonical(3);
        assert_eq!(
            run_verifier(&v, &config, &ids, &vec![BitString::new(); 2]),
            Err(RuntimeError::CertificateLengthMismatch { got: 2, want: 3 })
        );
    }

    #[test]
    fn flooding_matches_direct_view_extraction() {
        // includes a bridged double-triangle so exact-distance edges matter
        let bowtie = build_graph(
            5,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 2)],
        )
        .unwrap();
        for g in [path(5), cycle(6), star(4), bowtie] {
            let n = g.n();
            let config = Configuration::new(
                g,
                (0..n).map(|v| BitString::from_value_width(v as u64 % 2, 1)).collect(),
            )
            .unwrap();
            let ids = IdAssignment::new(
                (0..n).map(|v| (3 * v + 1) as u64).collect(),
                (n * n) as u64,
            )
            .unwrap();
            let certs: Vec<BitString> =
                (0..n).map(|v| BitString::from_value(v as u64 + 1)).collect();
            for t in 0..=3 {
                let flooded = flood_views(&config, &ids, Some(&certs), t);
                for v in 0..n {
                    let direct = ball(&config, &ids, Some(&certs), v, t);
                    assert!(
                        views_isomorphic(&flooded[v], &direct, true),
                        "node {v} at t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn decider_checking_finds_violations() {
        // "degree ≤ 2 everywhere" decides paths-and-cycles, not trees
        let d = degree_cap_rule();
        let ok = check_decides(
            &d,
            LanguageId::Tree,
            &[eps(path(4)), eps(path(2))],
            &IdStrategy::AllPermutations,
        );
        assert!(ok.passed);
        assert_eq!(ok.instances_checked, 2);

        // star(4) is a member but the hub rejects: completeness failure
        let complete_fail = check_decides(
            &d,
            LanguageId::Tree,
            &[eps(star(4))],
            &IdStrategy::AllPermutations,
        );
        assert!(!complete_fail.passed);
        let w = complete_fail.completeness_witness.unwrap();
        assert_eq!(w.failing_node, Some(0));

        // cycle(5) is a non-member but every node accepts: soundness failure
        let sound_fail = check_decides(
            &d,
            LanguageId::Tree,
            &[eps(cycle(5))],
            &IdStrategy::AllPermutations,
        );
        assert!(!sound_fail.passed);
        assert!(sound_fail.soundness_witness.unwrap().failing_node.is_none());
    }

    #[test]
    fn witnesses_serialize_compactly() {
        let w = Witness {
            config: Configuration::new(path(2), vec![bitstr!("1"), BitString::new()]).unwrap(),
            ids: vec![2, 4],
            certs: None,
            failing_node: Some(1),
        };
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"config":{"n":2,"edges":[[0,1]],"inputs":{"0":"1"}},"ids":[2,4],"failingNode":1}"#
        );
    }
}

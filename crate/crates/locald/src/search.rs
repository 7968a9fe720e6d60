//! Exhaustive certificate-space search: the machinery for *soundness*
//! claims ("no certificate assignment fools the verifier on this
//! non-member") and for measuring minimum certificate sizes.
//!
//! Spaces stream their vectors through a callback in a fixed deterministic
//! order, so found witnesses are reproducible, and count every emitted
//! vector against a budget rather than materialising anything.

use std::ops::ControlFlow;

use crate::bits::BitString;
use crate::cert::{
    canonical_root, preorder_ranks, quotient_encode, symmetry_encode, tree_code,
    CertificateVector,
};
use crate::graph::{
    enumerate_instances, Configuration, IdAssignment, IdStrategy, InstanceKind,
};
use crate::lift::enumerate_lift_labelings;
use crate::runtime::{run_verifier, LocalVerifier};

/// How lift-shaped certificates spell out their quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftCodec {
    /// Plain trees: a balanced descend/ascend walk plus a position rank.
    TreeCode,
    /// Arbitrary quotient configurations: size, adjacency matrix, inputs,
    /// and a position label.
    QuotientCode,
}

/// A space of certificate vectors for a cheating prover to draw from.
///
/// The unstructured spaces are complete by construction. The structured
/// space enumerates exactly the vectors that encode a labeling of the
/// configuration satisfying the pointwise lift constraints, over one
/// representative per quotient isomorphism class; this loses nothing, since
/// an all-accepting run of a lift-shaped verifier forces those constraints
/// to hold for the decoded quotient, and relabeling the quotient (and the
/// certificates with it) never changes any node's verdict — so whenever some
/// vector fools the verifier, a vector over the class representative does
/// too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertSpace {
    /// Every vector of bit strings of length at most the bound.
    AllBitstringsUpTo(usize),
    /// Every vector of minimally-encoded values `0..=max`.
    DistanceLabels(u64),
    /// Every vector of single bits.
    ColorBits,
    /// Every vector encoding a pointwise-consistent lift labeling over a
    /// quotient of at most the given size (a divisor of the node count).
    StructuredLift {
        max_quotient_size: usize,
        codec: LiftCodec,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Most vectors a single space traversal may emit.
    pub max_candidates: usize,
    /// Largest per-node certificate length that `min_cert_size` will try.
    pub max_label_bits: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_candidates: 2_000_000,
            max_label_bits: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("certificate space exceeds the budget of {budget} candidates")]
    BudgetExceeded { budget: usize },
}

/// What a space traversal did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceScan {
    /// Vectors handed to the callback.
    pub candidates: usize,
    /// Whether the callback broke off the traversal.
    pub stopped_early: bool,
}

/// All bit strings of length at most `max_len`, shortest first, then by
/// value — the per-node alphabet of the unstructured spaces.
fn strings_up_to(max_len: usize) -> Vec<BitString> {
    let mut out = vec![BitString::new()];
    for len in 1..=max_len {
        for value in 0..(1u64 << len) {
            out.push(BitString::from_value_width(value, len));
        }
    }
    out
}

/// Streams every `n`-fold product of the alphabet, last position fastest.
fn product_scan<F>(
    alphabet: &[BitString],
    n: usize,
    opts: &SearchOptions,
    mut f: F,
) -> Result<SpaceScan, SearchError>
where
    F: FnMut(&CertificateVector) -> ControlFlow<()>,
{
    let mut digits = vec![0usize; n];
    let mut certs: CertificateVector = vec![alphabet[0].clone(); n];
    let mut candidates = 0usize;
    loop {
        if candidates >= opts.max_candidates {
            return Err(SearchError::BudgetExceeded {
                budget: opts.max_candidates,
            });
        }
        candidates += 1;
        if f(&certs).is_break() {
            return Ok(SpaceScan {
                candidates,
                stopped_early: true,
            });
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(SpaceScan {
                    candidates,
                    stopped_early: false,
                });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < alphabet.len() {
                certs[pos] = alphabet[digits[pos]].clone();
                break;
            }
            digits[pos] = 0;
            certs[pos] = alphabet[0].clone();
        }
    }
}

impl CertSpace {
    /// Streams every vector in the space for this configuration, in a fixed
    /// deterministic order, until the callback breaks, the space is
    /// exhausted, or the candidate budget runs out.
    pub fn for_each_vector<F>(
        &self,
        config: &Configuration,
        opts: &SearchOptions,
        mut f: F,
    ) -> Result<SpaceScan, SearchError>
    where
        F: FnMut(&CertificateVector) -> ControlFlow<()>,
    {
        let n = config.n();
        match self {
            CertSpace::AllBitstringsUpTo(max_len) => {
                product_scan(&strings_up_to(*max_len), n, opts, f)
            }
            CertSpace::DistanceLabels(max) => {
                let alphabet: Vec<BitString> =
                    (0..=*max).map(BitString::from_value).collect();
                product_scan(&alphabet, n, opts, f)
            }
            CertSpace::ColorBits => {
                let alphabet = vec![
                    BitString::from_value_width(0, 1),
                    BitString::from_value_width(1, 1),
                ];
                product_scan(&alphabet, n, opts, f)
            }
            CertSpace::StructuredLift {
                max_quotient_size,
                codec,
            } => {
                let g = config.topology();
                let mut config_degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
                config_degrees.sort_unstable();
                let mut candidates = 0usize;
                for d in 1..=n.min(*max_quotient_size) {
                    if n % d != 0 {
                        continue;
                    }
                    let l = n / d;
                    let kind = match codec {
                        LiftCodec::TreeCode => InstanceKind::Trees,
                        LiftCodec::QuotientCode => InstanceKind::ConnectedGraphs,
                    };
                    let quotients =
                        enumerate_instances(kind, d, d).expect("cap equals size");
                    for q in quotients {
                        let mut lifted_degrees: Vec<usize> = (0..d)
                            .flat_map(|u| std::iter::repeat(q.degree(u)).take(l))
                            .collect();
                        lifted_degrees.sort_unstable();
                        if lifted_degrees != config_degrees {
                            continue;
                        }
                        for (labels, q_inputs) in enumerate_lift_labelings(config, &q) {
                            let certs: CertificateVector = match codec {
                                LiftCodec::QuotientCode => {
                                    let quotient =
                                        Configuration::new(q.clone(), q_inputs)
                                            .expect("one input per quotient node");
                                    labels
                                        .iter()
                                        .map(|&lbl| quotient_encode(&quotient, lbl))
                                        .collect()
                                }
                                LiftCodec::TreeCode => {
                                    let root = canonical_root(&q);
                                    let ranks = preorder_ranks(&q, root);
                                    let code = tree_code(&q, root);
                                    labels
                                        .iter()
                                        .map(|&lbl| symmetry_encode(&code, d, ranks[lbl]))
                                        .collect()
                                }
                            };
                            if candidates >= opts.max_candidates {
                                return Err(SearchError::BudgetExceeded {
                                    budget: opts.max_candidates,
                                });
                            }
                            candidates += 1;
                            if f(&certs).is_break() {
                                return Ok(SpaceScan {
                                    candidates,
                                    stopped_early: true,
                                });
                            }
                        }
                    }
                }
                Ok(SpaceScan {
                    candidates,
                    stopped_early: false,
                })
            }
        }
    }
}

fn id_scope(verifier: &LocalVerifier, strategy: &IdStrategy, n: usize) -> Vec<IdAssignment> {
    if verifier.reads_ids {
        strategy.generate(n)
    } else {
        // an identifier-blind rule returns the same verdicts under every
        // assignment, so one canonical assignment decides them all
        vec![IdAssignment::canonical(n)]
    }
}

/// Hunts for a certificate vector (and identifier assignment) that makes
/// every node accept. `Ok(None)` is a soundness proof for this
/// configuration relative to the space and identifier scope.
pub fn soundness_search(
    verifier: &LocalVerifier,
    config: &Configuration,
    space: &CertSpace,
    strategy: &IdStrategy,
    opts: &SearchOptions,
) -> Result<Option<(CertificateVector, IdAssignment)>, SearchError> {
    let assignments = id_scope(verifier, strategy, config.n());
    let mut found = None;
    space.for_each_vector(config, opts, |certs| {
        for ids in &assignments {
            let verdict = run_verifier(verifier, config, ids, certs)
                .expect("spaces emit one certificate per node");
            if verdict.global() {
                found = Some((certs.clone(), ids.clone()));
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(found)
}

/// The smallest maximum certificate length that lets every node accept under
/// every identifier assignment in scope, with a witnessing vector — or
/// `None` if no length up to `opts.max_label_bits` works. Lengths are tried
/// in stages, so the budget applies per stage.
pub fn min_cert_size(
    verifier: &LocalVerifier,
    config: &Configuration,
    strategy: &IdStrategy,
    opts: &SearchOptions,
) -> Result<Option<(usize, CertificateVector)>, SearchError> {
    let assignments = id_scope(verifier, strategy, config.n());
    for len_cap in 0..=opts.max_label_bits {
        let mut found = None;
        CertSpace::AllBitstringsUpTo(len_cap).for_each_vector(config, opts, |certs| {
            // vectors whose maximum is below the cap were covered by an
            // earlier stage
            if certs.iter().map(BitString::len).max().unwrap_or(0) != len_cap {
                return ControlFlow::Continue(());
            }
            let all_accept = assignments.iter().all(|ids| {
                run_verifier(verifier, config, ids, certs)
                    .expect("product spaces emit one certificate per node")
                    .global()
            });
            if all_accept {
                found = Some(certs.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        if let Some(certs) = found {
            return Ok(Some((len_cap, certs)));
        }
    }
    Ok(None)
}

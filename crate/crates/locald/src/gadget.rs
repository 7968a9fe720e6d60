//! Indistinguishability constructions that fool weak verifiers, and the
//! growth-rate functions that say when the fooling is guaranteed.
//!
//! The two attacks share one idea: a radius-`t` rule only ever sees a
//! dressed `t`-view, so whenever two accepted runs contain bitwise-equal
//! windows of certificates, the runs can be cut at those windows and
//! cross-glued into a configuration outside the language on which every
//! view still looks like one from an accepted run.

use crate::bits::{BitReader, BitString};
use crate::cert::CertificateVector;
use crate::graph::{
    build_graph, cycle, path, ball, views_isomorphic, Configuration, GraphTopology,
    IdAssignment, RadiusView,
};
use crate::lang::{member, LanguageId};
use crate::runtime::{run_verifier, LocalVerifier};

// ---------------------------------------------------------------------------
// Growth-rate functions
// ---------------------------------------------------------------------------

/// Inner corridor length for the tree-pair gadget on `n`-node trees: `n`
/// rounded down to even. Always even, so the corridor has a middle edge for
/// the mirror symmetry to swap across.
pub fn psi(n: usize) -> usize {
    n - n % 2
}

/// The number of labeled trees on `n` nodes, `n^(n-2)`.
pub fn cayley(n: u32) -> u128 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u128).pow(n - 2),
    }
}

/// How many more bits a graph has than an identifier assignment can hide:
/// `C(n,2) - log2(n!)`. Grows unboundedly, which is why certificates that
/// only depend on identifiers cannot spell out arbitrary graphs.
pub fn counting_gap(n: u64) -> f64 {
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    let log_factorial: f64 = (2..=n).map(|i| (i as f64).log2()).sum();
    pairs - log_factorial
}

/// A path long enough that any assignment of `(k+1)`-bit-alphabet
/// certificates must repeat a full splice window: `(4t+4) ·
/// (2^((k+1)(2t+1)) + 1)` positions give more interior window centres with
/// pairwise distance over `2t` than there are distinct windows.
pub fn splice_path_length(k: usize, t: u32) -> usize {
    let t = t as usize;
    (4 * t + 4) * ((1usize << ((k + 1) * (2 * t + 1))) + 1)
}

/// The certificate-size thresholds under which radius-`t` tree verifiers
/// are guaranteed foolable on `n`-node instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundFns {
    pub t: u32,
}

impl BoundFns {
    pub fn new(t: u32) -> Self {
        assert!(t >= 1, "the rate functions assume a positive radius");
        BoundFns { t }
    }

    /// Real-valued certificate-length threshold
    /// `(log2(n)/2 - (4t+5)) / (2t) - 1`: any verifier whose certificates
    /// stay at or below this many bits leaves a spliceable path of at most
    /// `n` nodes.
    pub fn foolable_bits(&self, n: u64) -> f64 {
        let t = self.t as f64;
        (0.5 * (n as f64).log2() - (4.0 * t + 5.0)) / (2.0 * t) - 1.0
    }

    /// The largest usable integer threshold.
    pub fn foolable_bits_floor(&self, n: u64) -> i64 {
        self.foolable_bits(n).floor() as i64
    }

    /// Nodes needed by the guaranteed-foolable path at the integer
    /// threshold: `(4t+4) · (2^(2t(k+1)) + 1) · 2^(k+1)`, or `None` when
    /// even zero-bit certificates are out of reach for this `n`.
    pub fn fooling_path_length(&self, n: u64) -> Option<u128> {
        let k = self.foolable_bits_floor(n);
        if k < 0 {
            return None;
        }
        let t = self.t as u128;
        let alphabet = 1u128 << (k as u32 + 1);
        Some((4 * t + 4) * (alphabet.pow(2 * self.t) + 1) * alphabet)
    }
}

// ---------------------------------------------------------------------------
// Strawman tree verifiers and the splice attack
// ---------------------------------------------------------------------------

/// A deliberately weak tree verifier family over max-degree-2 instances,
/// with `k`-bit certificates (`k` is 0 or 1). `k = 0`: empty input, empty
/// certificates, degree at most 2. `k = 1`: one-bit certificates that must
/// alternate across every edge. Both accept honest runs on paths — and, as
/// the splice shows, suitably dressed cycles too.
pub fn strawman_tree_verifier(k: usize) -> LocalVerifier {
    assert!(k <= 1, "the strawman family stops at one bit");
    LocalVerifier::new(
        format!("verifier:strawman-tree:k{k}"),
        1,
        false,
        move |view: &RadiusView| {
            let r = view.root();
            if !view.input(r).is_empty() || view.degree(r) > 2 {
                return false;
            }
            let Some(mine) = view.cert(r) else {
                return false;
            };
            if mine.len() != k {
                return false;
            }
            view.neighbors(r).iter().all(|&u| match view.cert(u) {
                Some(theirs) if k == 0 => theirs.is_empty(),
                Some(theirs) => theirs.len() == 1 && theirs != mine,
                None => false,
            })
        },
    )
}

/// Honest certificates for the strawman family on an `n`-node path: empty
/// for `k = 0`, alternating bits for `k = 1`.
pub fn strawman_tree_certificates(k: usize, n: usize) -> CertificateVector {
    assert!(k <= 1);
    (0..n)
        .map(|i| BitString::from_value_width(if k == 0 { 0 } else { (i % 2) as u64 }, k))
        .collect()
}

/// A certificate-dressed cycle on which every radius-`t` view is
/// isomorphic to a view from the donor path run.
#[derive(Debug, Clone)]
pub struct Splice {
    pub cycle: Configuration,
    pub certs: CertificateVector,
    /// Window centres on the donor path (0-indexed) where the repeat was
    /// found.
    pub window_centres: (usize, usize),
}

/// Hunts for two bitwise-equal interior certificate windows on a path run
/// and, on success, glues the segment between them into a cycle whose every
/// node wears a view indistinguishable (inputs and certificates, no
/// identifiers) from some path node's view at radius `t`.
///
/// The cycle takes positions `p1-t ..= p2+t` followed by a second copy of
/// the strict interior `p1+t+1 ..= p2-t-1`, for `2(p2-p1)` nodes in all;
/// window equality makes both seams mimic adjacencies the path already has.
/// A rule that accepts the path at every node under every identifier
/// assignment therefore accepts the cycle — which is not a tree.
pub fn splice_cycle_from_path(path_certs: &CertificateVector, t: u32) -> Option<Splice> {
    let len = path_certs.len();
    let t = t as usize;
    // window centres stay clear of the endpoints so every window describes
    // degree-2 territory
    let lo = t + 1;
    let hi = len.checked_sub(t + 2)?;
    let window = |p: usize| &path_certs[p - t..=p + t];
    let (p1, p2) = (lo..=hi)
        .flat_map(|a| ((a + 2 * t + 1)..=hi).map(move |b| (a, b)))
        .find(|&(a, b)| window(a) == window(b))?;

    let mut certs: CertificateVector = path_certs[p1 - t..=p2 + t].to_vec();
    certs.extend_from_slice(&path_certs[p1 + t + 1..=p2 - t - 1]);
    let total = 2 * (p2 - p1);
    debug_assert_eq!(certs.len(), total);
    let spliced = Configuration::with_empty_inputs(cycle(total));

    // sanity: every cycle view really is a path view in disguise
    let donor = Configuration::with_empty_inputs(path(len));
    let donor_ids = IdAssignment::canonical(len);
    let cycle_ids = IdAssignment::canonical(total);
    let donor_views: Vec<RadiusView> = (0..len)
        .map(|q| ball(&donor, &donor_ids, Some(path_certs), q, t as u32))
        .collect();
    for c in 0..total {
        let view = ball(&spliced, &cycle_ids, Some(&certs), c, t as u32);
        assert!(
            donor_views
                .iter()
                .any(|dv| views_isomorphic(&view, dv, false)),
            "spliced node {c} wears a view the donor path never produced"
        );
    }
    Some(Splice {
        cycle: spliced,
        certs,
        window_centres: (p1, p2),
    })
}

// ---------------------------------------------------------------------------
// Partition gadgets and the transplant attack
// ---------------------------------------------------------------------------

/// Two input-constant blobs joined by an alternating corridor of `4t+4`
/// nodes. Node layout: the left blob keeps its indices, corridor positions
/// `1..=4t+4` follow, the right blob comes last.
#[derive(Debug, Clone)]
pub struct PartitionGadget {
    pub config: Configuration,
    pub left_size: usize,
    pub right_size: usize,
    pub left_attach: usize,
    pub right_attach: usize,
    pub left_input: bool,
    pub right_input: bool,
    pub t: u32,
}

impl PartitionGadget {
    pub fn corridor_len(&self) -> usize {
        4 * self.t as usize + 4
    }

    /// Global index of corridor position `m` (1-indexed from the left).
    pub fn corridor_node(&self, m: usize) -> usize {
        debug_assert!((1..=self.corridor_len()).contains(&m));
        self.left_size + m - 1
    }

    /// Global index of node `v` of the right blob.
    pub fn right_node(&self, v: usize) -> usize {
        self.left_size + self.corridor_len() + v
    }
}

/// Assembles the gadget: all left-blob nodes carry input `i`, all
/// right-blob nodes carry `j`, corridor position `m` carries `m mod 2` —
/// so the corridor is balanced and the whole gadget has equally many zeros
/// and ones exactly when the blobs have equal sizes and opposite inputs.
pub fn partition_gadget(
    g1: &GraphTopology,
    v1: usize,
    i: bool,
    g2: &GraphTopology,
    v2: usize,
    j: bool,
    t: u32,
) -> PartitionGadget {
    let (n1, n2) = (g1.n(), g2.n());
    let corridor = 4 * t as usize + 4;
    let shift = n1 + corridor;
    let mut edges = g1.edges();
    for m in 0..corridor - 1 {
        edges.push((n1 + m, n1 + m + 1));
    }
    edges.push((v1, n1));
    edges.push((n1 + corridor - 1, shift + v2));
    edges.extend(g2.edges().into_iter().map(|(u, w)| (u + shift, w + shift)));
    let g = build_graph(n1 + corridor + n2, &edges).expect("gadget parts are connected");
    let inputs = (0..g.n())
        .map(|x| {
            let bit = if x < n1 {
                i
            } else if x < shift {
                (x - n1 + 1) % 2 == 1
            } else {
                j
            };
            BitString::from_value_width(bit as u64, 1)
        })
        .collect();
    PartitionGadget {
        config: Configuration::new(g, inputs).expect("one input per node"),
        left_size: n1,
        right_size: n2,
        left_attach: v1,
        right_attach: shift + v2,
        left_input: i,
        right_input: j,
        t,
    }
}

fn parse_summary_cert(c: &BitString) -> Option<(bool, u64, bool, u64, bool)> {
    let mut r = BitReader::new(c);
    let side = r.read_bit().ok()?;
    let my_size = r.read_bits(8).ok()?;
    let my_input = r.read_bit().ok()?;
    let other_size = r.read_bits(8).ok()?;
    let other_input = r.read_bit().ok()?;
    Some((side, my_size, my_input, other_size, other_input))
}

/// A deliberately weak verifier for balanced inputs on partition gadgets.
/// Blob nodes carry a 19-bit summary — side flag (1 = right), own blob
/// size, own input, other blob's size, other blob's input — and corridor
/// nodes carry a 2-bit position counter mod 4.
///
/// Every node checks its own story against its neighbors': blob nodes
/// demand identical summaries throughout their blob, a balanced pair of
/// claimed sizes with opposite inputs, and the right corridor counter at
/// the attachment; corridor nodes demand consecutive counters, inputs
/// matching counter parity, and the correct end counter beside a blob. The
/// stories are locally airtight but the counter says nothing about *which*
/// run it came from — two accepted runs agree on their corridor middles,
/// and that is the crack the transplant widens.
pub fn strawman_eqsize_verifier() -> LocalVerifier {
    LocalVerifier::new(
        "verifier:strawman-eqsize",
        1,
        false,
        |view: &RadiusView| {
            let r = view.root();
            let Some(bit) = view.input(r).as_single_bit() else {
                return false;
            };
            let Some(mine) = view.cert(r) else {
                return false;
            };
            match mine.len() {
                2 => {
                    let k = mine.as_value().expect("two bits carry a value") as usize;
                    if view.degree(r) != 2 || ((k % 2 == 1) != bit) {
                        return false;
                    }
                    let mut counters = Vec::new();
                    let mut blob_sides = Vec::new();
                    for &u in view.neighbors(r) {
                        let Some(cu) = view.cert(u) else {
                            return false;
                        };
                        match cu.len() {
                            2 => counters
                                .push(cu.as_value().expect("two bits carry a value") as usize),
                            19 => match parse_summary_cert(cu) {
                                Some((side, ..)) => blob_sides.push(side),
                                None => return false,
                            },
                            _ => return false,
                        }
                    }
                    let up = (k + 1) % 4;
                    let down = (k + 3) % 4;
                    match (&counters[..], &blob_sides[..]) {
                        ([a, b], []) => {
                            (*a == down && *b == up) || (*a == up && *b == down)
                        }
                        ([a], [side]) => {
                            if *side {
                                // right blob: corridor ends on 4t+4 ≡ 0
                                k == 0 && *a == down
                            } else {
                                // left blob: corridor starts at 1
                                k == 1 && *a == up
                            }
                        }
                        _ => false,
                    }
                }
                19 => {
                    let Some((side, my_size, my_input, other_size, other_input)) =
                        parse_summary_cert(mine)
                    else {
                        return false;
                    };
                    if my_input != bit || my_size != other_size || my_input == other_input {
                        return false;
                    }
                    view.neighbors(r).iter().all(|&u| match view.cert(u) {
                        Some(cu) if cu.len() == 19 => cu == mine,
                        Some(cu) if cu.len() == 2 => {
                            let k = cu.as_value().expect("two bits carry a value");
                            if side {
                                k == 0
                            } else {
                                k == 1
                            }
                        }
                        _ => false,
                    })
                }
                _ => false,
            }
        },
    )
}

/// Honest strawman certificates for a partition gadget: per-blob summaries
/// and corridor counters.
pub fn strawman_eqsize_certificates(g: &PartitionGadget) -> CertificateVector {
    assert!(
        g.left_size < 256 && g.right_size < 256,
        "summaries carry 8-bit sizes"
    );
    let summary = |side: bool, a: usize, i: bool, b: usize, j: bool| {
        let mut c = BitString::new();
        c.push(side);
        c.extend(&BitString::from_value_width(a as u64, 8));
        c.push(i);
        c.extend(&BitString::from_value_width(b as u64, 8));
        c.push(j);
        c
    };
    let left = summary(false, g.left_size, g.left_input, g.right_size, g.right_input);
    let right = summary(true, g.right_size, g.right_input, g.left_size, g.left_input);
    (0..g.config.n())
        .map(|x| {
            if x < g.left_size {
                left.clone()
            } else if x < g.left_size + g.corridor_len() {
                let m = x - g.left_size + 1;
                BitString::from_value_width((m % 4) as u64, 2)
            } else {
                right.clone()
            }
        })
        .collect()
}

/// A non-member configuration assembled from two accepted gadget runs,
/// together with the certificates that keep every node accepting.
#[derive(Debug, Clone)]
pub struct Transplant {
    pub stitched: PartitionGadget,
    pub certs: CertificateVector,
    /// Pool indices of the donor gadgets: `(x, y)` for the `(0,1)`-input
    /// donor, `(x2, y2)` for the `(1,0)`-input donor.
    pub donors: ((usize, usize), (usize, usize)),
}

/// Runs the certificate-transplant attack against a verifier for balanced
/// inputs.
///
/// Every pool pair is assembled into a `(0,1)`-input gadget and a
/// `(1,0)`-input gadget, certified by `gen`, and kept when every node
/// accepts. Whenever an accepted left run and an accepted right run agree
/// bitwise on the corridor middle — positions `t+2 ..= 3t+3`, wide enough
/// to cover every view that straddles the cut between positions `2t+2` and
/// `2t+3` — the left half of the first is glued to the right half of the
/// second. Both blobs then carry input 0, so the result is out of the
/// language; if the verifier still accepts everywhere, the transplant is
/// returned.
///
/// Position-determined certificates (like the strawman's counters) always
/// collide. Certificates that embed the whole configuration (like quotient
/// encodings) never do, because the donor quotients differ.
pub fn transplant_attack(
    verifier: &LocalVerifier,
    gen: &dyn Fn(&PartitionGadget) -> Option<CertificateVector>,
    t: u32,
    pool: &[GraphTopology],
) -> Option<Transplant> {
    let accepted_runs = |i: bool, j: bool| -> Vec<(usize, usize, PartitionGadget, CertificateVector)> {
        let mut runs = Vec::new();
        for (xi, x) in pool.iter().enumerate() {
            for (yi, y) in pool.iter().enumerate() {
                let gadget = partition_gadget(x, 0, i, y, 0, j, t);
                let Some(certs) = gen(&gadget) else { continue };
                let ids = IdAssignment::canonical(gadget.config.n());
                let ok = run_verifier(verifier, &gadget.config, &ids, &certs)
                    .map(|v| v.global())
                    .unwrap_or(false);
                if ok {
                    runs.push((xi, yi, gadget, certs));
                }
            }
        }
        runs
    };
    let left_runs = accepted_runs(false, true);
    let right_runs = accepted_runs(true, false);

    let t_us = t as usize;
    let middle = |g: &PartitionGadget, certs: &CertificateVector| -> Vec<BitString> {
        (t_us + 2..=3 * t_us + 3)
            .map(|m| certs[g.corridor_node(m)].clone())
            .collect()
    };

    for (xi, yi, a, ca) in &left_runs {
        for (x2i, y2i, b, cb) in &right_runs {
            if middle(a, ca) != middle(b, cb) {
                continue;
            }
            let stitched = partition_gadget(&pool[*xi], 0, false, &pool[*y2i], 0, false, t);
            debug_assert!(!member(LanguageId::EqSizePartition, &stitched.config));
            let mut certs: CertificateVector = Vec::with_capacity(stitched.config.n());
            for v in 0..stitched.left_size {
                certs.push(ca[v].clone());
            }
            for m in 1..=2 * t_us + 2 {
                certs.push(ca[a.corridor_node(m)].clone());
            }
            for m in 2 * t_us + 3..=4 * t_us + 4 {
                certs.push(cb[b.corridor_node(m)].clone());
            }
            for v in 0..stitched.right_size {
                certs.push(cb[b.right_node(v)].clone());
            }
            let ids = IdAssignment::canonical(stitched.config.n());
            let fooled = run_verifier(verifier, &stitched.config, &ids, &certs)
                .map(|v| v.global())
                .unwrap_or(false);
            if fooled {
                return Some(Transplant {
                    stitched,
                    certs,
                    donors: ((*xi, *yi), (*x2i, *y2i)),
                });
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Tree-pair gadget
// ---------------------------------------------------------------------------

/// Joins two equal-sized trees through a corridor of `psi(n)` fresh nodes
/// (a direct edge when `n = 1`): indices `0..n` are the first tree,
/// `n..n+psi(n)` the corridor, the rest the second tree.
///
/// The result has a fixed-point-free automorphism exactly when the rooted
/// trees `(t1, v1)` and `(t2, v2)` are isomorphic: the mirror swap across
/// the corridor's middle edge is fixed-point-free, and conversely any
/// fixed-point-free automorphism must swap the halves across a central
/// edge, which equal blob sizes force to be the corridor's middle — pinning
/// attachment to attachment.
pub fn tree_pair_gadget(
    t1: &GraphTopology,
    v1: usize,
    t2: &GraphTopology,
    v2: usize,
) -> Configuration {
    assert!(t1.is_tree() && t2.is_tree(), "the gadget joins trees");
    assert_eq!(t1.n(), t2.n(), "the gadget joins equal-sized trees");
    let n = t1.n();
    let corridor = psi(n);
    let shift = n + corridor;
    let mut edges = t1.edges();
    for m in 0..corridor.saturating_sub(1) {
        edges.push((n + m, n + m + 1));
    }
    if corridor == 0 {
        edges.push((v1, shift + v2));
    } else {
        edges.push((v1, n));
        edges.push((n + corridor - 1, shift + v2));
    }
    edges.extend(t2.edges().into_iter().map(|(u, w)| (u + shift, w + shift)));
    let g = build_graph(n + corridor + t2.n(), &edges).expect("joined trees are connected");
    Configuration::with_empty_inputs(g)
}

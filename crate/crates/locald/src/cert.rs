//! Certificate formats and the catalog's honest provers.
//!
//! A certificate assignment is one bit-string per node, indexed like the
//! configuration and chosen without looking at identifiers. Composite
//! certificates are framed strictly: every field is either fixed-width or
//! length-delimited, integer fields must be minimal, and trailing bits are
//! rejected. Decoding is therefore injective — two valid certificates are
//! bitwise equal exactly when they describe the same object.

use crate::bits::{BitReadError, BitReader, BitString};
use crate::graph::iso::subtree_code;
use crate::graph::{build_graph, Configuration, GraphError, GraphTopology};
use crate::lang::{member, LanguageId};

/// One certificate per node, indexed like the configuration's nodes.
pub type CertificateVector = Vec<BitString>;

/// Size of a certificate assignment: the longest per-node label, in bits.
pub fn cert_size(certs: &CertificateVector) -> usize {
    certs.iter().map(BitString::len).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("bit-level framing: {0}")]
    Framing(#[from] BitReadError),
    #[error("{0}")]
    Malformed(&'static str),
}

/// Width of the fixed field that addresses a node of an `n`-node structure:
/// `ceil(log2 n)` bits, zero when there is only one node.
pub fn label_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Keeps hostile size fields from turning the decoder into an allocator.
const MAX_DECODED_NODES: u64 = 4096;

// ---------------------------------------------------------------------------
// Tree walks
// ---------------------------------------------------------------------------

/// Descend/ascend walk of a rooted tree: each child subtree is emitted as
/// `1 <subtree> 0` with children in sorted-code order, giving `2(n-1)` bits.
/// Equal walks characterise rooted isomorphism.
pub fn tree_code(g: &GraphTopology, root: usize) -> BitString {
    BitString::from_bits(
        subtree_code(g, root, None)
            .into_iter()
            .map(|b| b == b'1')
            .collect(),
    )
}

/// Rebuilds the tree described by a walk, numbering nodes in discovery order
/// with the root at index 0. Any balanced walk is accepted; decoding does not
/// insist on the canonical child order, only honest encoders produce it.
pub fn decode_tree_code(bits: &BitString) -> Result<GraphTopology, CertError> {
    let mut stack = vec![0usize];
    let mut edges = Vec::new();
    let mut next = 1usize;
    for b in bits.bits() {
        if b {
            edges.push((*stack.last().unwrap(), next));
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
            if stack.is_empty() {
                return Err(CertError::Malformed("tree walk ascends above its root"));
            }
        }
    }
    if stack.len() != 1 {
        return Err(CertError::Malformed("tree walk does not return to its root"));
    }
    Ok(build_graph(next, &edges).expect("a balanced walk always describes a tree"))
}

/// Discovery ranks of a canonical depth-first traversal from `root`
/// (children visited in sorted-code order). Relabelling the tree by these
/// ranks yields exactly [`decode_tree_code`] of [`tree_code`].
pub fn preorder_ranks(g: &GraphTopology, root: usize) -> Vec<usize> {
    fn dfs(g: &GraphTopology, v: usize, parent: Option<usize>, next: &mut usize, rank: &mut [usize]) {
        rank[v] = *next;
        *next += 1;
        let mut kids: Vec<(Vec<u8>, usize)> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| Some(u) != parent)
            .map(|&u| (subtree_code(g, u, Some(v)), u))
            .collect();
        kids.sort();
        for (_, u) in kids {
            dfs(g, u, Some(v), next, rank);
        }
    }
    assert!(g.is_tree(), "preorder ranks are defined on trees");
    let mut rank = vec![0usize; g.n()];
    let mut next = 0usize;
    dfs(g, root, None, &mut next, &mut rank);
    rank
}

// ---------------------------------------------------------------------------
// Symmetric-tree certificates: a tree walk plus this node's rank in it
// ---------------------------------------------------------------------------

/// Certificate carried by every node under the symmetric-tree verifier: the
/// whole tree's walk as a blob, then this node's preorder rank at fixed
/// width. No trailing bits.
pub fn symmetry_encode(code: &BitString, n: usize, rank: usize) -> BitString {
    debug_assert_eq!(code.len(), 2 * (n - 1), "walk length must match the node count");
    debug_assert!(rank < n);
    let mut out = BitString::new();
    out.push_blob(code);
    out.extend(&BitString::from_value_width(rank as u64, label_width(n)));
    out
}

/// Strict inverse of [`symmetry_encode`]: the announced tree (preorder
/// indexed) and this node's rank in it.
pub fn symmetry_decode(cert: &BitString) -> Result<(GraphTopology, usize), CertError> {
    let mut r = BitReader::new(cert);
    let code = r.read_blob()?;
    let tree = decode_tree_code(&code)?;
    let rank = r.read_bits(label_width(tree.n()))? as usize;
    if rank >= tree.n() {
        return Err(CertError::Malformed("rank out of range"));
    }
    if r.remaining() != 0 {
        return Err(CertError::Malformed("trailing bits"));
    }
    Ok((tree, rank))
}

// ---------------------------------------------------------------------------
// Quotient certificates: a whole small configuration plus this node's image
// ---------------------------------------------------------------------------

/// Certificate carried by every node under a quotient-based verifier: the
/// announced configuration (size, row-major adjacency matrix, one input blob
/// per node) followed by this node's image at fixed width. No trailing bits.
pub fn quotient_encode(quotient: &Configuration, label: usize) -> BitString {
    let n = quotient.n();
    debug_assert!(label < n);
    let g = quotient.topology();
    let mut out = BitString::new();
    out.push_blob(&BitString::from_value(n as u64));
    for u in 0..n {
        for w in 0..n {
            out.push(g.has_edge(u, w));
        }
    }
    for v in 0..n {
        out.push_blob(quotient.input(v));
    }
    out.extend(&BitString::from_value_width(label as u64, label_width(n)));
    out
}

/// Strict inverse of [`quotient_encode`]. The adjacency matrix must be
/// symmetric and hollow and describe a connected graph; the size field must
/// be minimal; the image must address a node; nothing may trail.
pub fn quotient_decode(cert: &BitString) -> Result<(Configuration, usize), CertError> {
    let mut r = BitReader::new(cert);
    let size_bits = r.read_blob()?;
    let n64 = size_bits
        .as_value()
        .ok_or(CertError::Malformed("empty size field"))?;
    if size_bits != BitString::from_value(n64) {
        return Err(CertError::Malformed("size field is not minimal"));
    }
    if n64 == 0 {
        return Err(CertError::Malformed("zero-node quotient"));
    }
    if n64 > MAX_DECODED_NODES {
        return Err(CertError::Malformed("quotient too large"));
    }
    let n = n64 as usize;
    let mut matrix = vec![false; n * n];
    for cell in matrix.iter_mut() {
        *cell = r.read_bit()?;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        if matrix[u * n + u] {
            return Err(CertError::Malformed("quotient has a self-loop"));
        }
        for w in u + 1..n {
            if matrix[u * n + w] != matrix[w * n + u] {
                return Err(CertError::Malformed("quotient matrix is asymmetric"));
            }
            if matrix[u * n + w] {
                edges.push((u, w));
            }
        }
    }
    let g = build_graph(n, &edges).map_err(|e| match e {
        GraphError::Disconnected => CertError::Malformed("quotient is disconnected"),
        _ => CertError::Malformed("quotient matrix is invalid"),
    })?;
    let mut inputs = Vec::with_capacity(n);
    for _ in 0..n {
        inputs.push(r.read_blob()?);
    }
    let label = r.read_bits(label_width(n))? as usize;
    if label >= n {
        return Err(CertError::Malformed("image out of range"));
    }
    if r.remaining() != 0 {
        return Err(CertError::Malformed("trailing bits"));
    }
    let config = Configuration::new(g, inputs).expect("one input was read per node");
    Ok((config, label))
}

// ---------------------------------------------------------------------------
// Distance labels for the tree verifier
// ---------------------------------------------------------------------------

/// Distance label: plain MSB-first binary, compared by value.
pub fn distance_encode(d: u64) -> BitString {
    BitString::from_value(d)
}

/// Reads a distance label. Empty and over-long labels are invalid; leading
/// zeros are tolerated since only the value matters to the verifier.
pub fn distance_decode(cert: &BitString) -> Option<u64> {
    if cert.is_empty() || cert.len() > 16 {
        return None;
    }
    cert.as_value()
}

// ---------------------------------------------------------------------------
// Honest provers
// ---------------------------------------------------------------------------

/// Root for the canonical walk of a tree: the centre whose walk is
/// lexicographically least (symmetric centres tie harmlessly).
pub fn canonical_root(g: &GraphTopology) -> usize {
    g.centers()
        .into_iter()
        .min_by_key(|&c| subtree_code(g, c, None))
        .expect("a connected graph has a centre")
}

/// The honest prover: certificates for a member configuration, `None` on
/// non-members. Certificates are a function of the configuration alone —
/// identifiers play no part.
pub fn make_certificate(lang: LanguageId, config: &Configuration) -> Option<CertificateVector> {
    if !member(lang, config) {
        return None;
    }
    let g = config.topology();
    Some(match lang {
        LanguageId::TreeRadius(_) => vec![BitString::new(); config.n()],
        LanguageId::Tree => {
            let root = g.centers()[0];
            g.distances(root)
                .into_iter()
                .map(|d| distance_encode(u64::from(d)))
                .collect()
        }
        LanguageId::FpfSymmetryOnTrees => {
            let root = canonical_root(g);
            let code = tree_code(g, root);
            let rank = preorder_ranks(g, root);
            (0..config.n())
                .map(|v| symmetry_encode(&code, config.n(), rank[v]))
                .collect()
        }
        LanguageId::EqSizePartition => (0..config.n())
            .map(|v| quotient_encode(config, v))
            .collect(),
        LanguageId::Bipartite => g
            .two_coloring()
            .expect("members are bipartite")
            .into_iter()
            .map(|c| BitString::from_value_width(u64::from(c), 1))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstr;
    use crate::graph::{
        complete, cycle, enumerate_instances, path, star, InstanceKind,
    };

    #[test]
    fn label_widths() {
        for (n, w) in [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)] {
            assert_eq!(label_width(n), w, "n={n}");
        }
    }

    #[test]
    fn tree_code_round_trips_through_preorder_ranks() {
        for n in 1..=7 {
            for g in enumerate_instances(InstanceKind::Trees, n, 8).unwrap() {
                for root in 0..n {
                    let code = tree_code(&g, root);
                    assert_eq!(code.len(), 2 * (n - 1));
                    let decoded = decode_tree_code(&code).unwrap();
                    let ranks = preorder_ranks(&g, root);
                    assert_eq!(ranks[root], 0);
                    assert_eq!(g.relabel(&ranks), decoded);
                }
            }
        }
    }

    #[test]
    fn tree_code_decoder_rejects_unbalanced_walks() {
        assert!(decode_tree_code(&bitstr!("1")).is_err());
        assert!(decode_tree_code(&bitstr!("01")).is_err());
        assert!(decode_tree_code(&bitstr!("100")).is_err());
        assert_eq!(decode_tree_code(&BitString::new()).unwrap().n(), 1);
        let p3_from_end = decode_tree_code(&bitstr!("1100")).unwrap();
        assert_eq!(p3_from_end.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn symmetry_certificates_round_trip() {
        let p2 = path(2);
        let code = tree_code(&p2, 0);
        assert_eq!(code, bitstr!("10"));
        let c0 = symmetry_encode(&code, 2, 0);
        let c1 = symmetry_encode(&code, 2, 1);
        assert_eq!(c0, bitstr!("11010100"));
        assert_eq!(c1, bitstr!("11010101"));
        for (c, want) in [(c0, 0), (c1, 1)] {
            let (tree, rank) = symmetry_decode(&c).unwrap();
            assert_eq!(tree.n(), 2);
            assert_eq!(rank, want);
        }
        // trailing bits are fatal
        let mut padded = bitstr!("11010100");
        padded.push(false);
        assert!(symmetry_decode(&padded).is_err());
    }

    #[test]
    fn quotient_certificate_bits_are_frozen() {
        let triangle = Configuration::with_empty_inputs(complete(3));
        let cert = quotient_encode(&triangle, 0);
        assert_eq!(cert.len(), 27);
        assert_eq!(
            cert,
            bitstr!("110101101110111010010010000")
        );
        let (decoded, label) = quotient_decode(&cert).unwrap();
        assert_eq!(decoded, triangle);
        assert_eq!(label, 0);
    }

    #[test]
    fn quotient_certificates_round_trip() {
        let mut configs = vec![
            Configuration::with_empty_inputs(path(4)),
            Configuration::new(
                cycle(4),
                vec![bitstr!("0"), bitstr!("1"), bitstr!("0"), bitstr!("1")],
            )
            .unwrap(),
            Configuration::new(path(1), vec![bitstr!("101")]).unwrap(),
        ];
        configs.push(Configuration::with_empty_inputs(star(5)));
        for q in configs {
            for label in 0..q.n() {
                let cert = quotient_encode(&q, label);
                let (decoded, l) = quotient_decode(&cert).unwrap();
                assert_eq!(decoded, q);
                assert_eq!(l, label);
            }
        }
    }

    #[test]
    fn quotient_decoder_is_strict() {
        let k2 = Configuration::with_empty_inputs(path(2));
        let good = quotient_encode(&k2, 1);

        let mut trailing = good.clone();
        trailing.push(false);
        assert_eq!(
            quotient_decode(&trailing),
            Err(CertError::Malformed("trailing bits"))
        );

        // a size field with a leading zero is non-minimal
        let mut bad_size = BitString::new();
        bad_size.push_blob(&bitstr!("010"));
        assert_eq!(
            quotient_decode(&bad_size),
            Err(CertError::Malformed("size field is not minimal"))
        );

        // an asymmetric matrix is rejected before anything else is read
        let mut asym = BitString::new();
        asym.push_blob(&bitstr!("10"));
        asym.extend(&bitstr!("0100"));
        assert_eq!(
            quotient_decode(&asym),
            Err(CertError::Malformed("quotient matrix is asymmetric"))
        );

        // a disconnected quotient is rejected
        let mut disc = BitString::new();
        disc.push_blob(&bitstr!("10"));
        disc.extend(&bitstr!("0000"));
        assert_eq!(
            quotient_decode(&disc),
            Err(CertError::Malformed("quotient is disconnected"))
        );

        // truncation surfaces as a framing error
        let mut cut = BitString::new();
        for b in good.bits().take(good.len() - 2) {
            cut.push(b);
        }
        assert!(matches!(quotient_decode(&cut), Err(CertError::Framing(_))));
    }

    #[test]
    fn distance_labels() {
        assert_eq!(distance_encode(0), bitstr!("0"));
        assert_eq!(distance_encode(5), bitstr!("101"));
        assert_eq!(distance_decode(&bitstr!("101")), Some(5));
        assert_eq!(distance_decode(&bitstr!("0010")), Some(2));
        assert_eq!(distance_decode(&BitString::new()), None);
        assert_eq!(
            distance_decode(&BitString::from_value_width(0, 17)),
            None
        );
    }

    #[test]
    fn honest_prover_refuses_non_members() {
        let eps = Configuration::with_empty_inputs;
        assert!(make_certificate(LanguageId::Tree, &eps(cycle(3))).is_none());
        assert!(make_certificate(LanguageId::FpfSymmetryOnTrees, &eps(path(3))).is_none());
        let unbalanced =
            Configuration::new(path(2), vec![bitstr!("1"), bitstr!("1")]).unwrap();
        assert!(make_certificate(LanguageId::EqSizePartition, &unbalanced).is_none());
        assert!(make_certificate(LanguageId::Bipartite, &eps(cycle(5))).is_none());
    }

    #[test]
    fn honest_prover_output_shapes() {
        let eps = Configuration::with_empty_inputs;

        let dist = make_certificate(LanguageId::Tree, &eps(path(3))).unwrap();
        assert_eq!(dist, vec![bitstr!("1"), bitstr!("0"), bitstr!("1")]);

        let flat = make_certificate(LanguageId::TreeRadius(1), &eps(star(4))).unwrap();
        assert!(flat.iter().all(BitString::is_empty));

        let colors = make_certificate(LanguageId::Bipartite, &eps(cycle(4))).unwrap();
        assert_eq!(
            colors,
            vec![bitstr!("0"), bitstr!("1"), bitstr!("0"), bitstr!("1")]
        );

        let balanced = Configuration::new(
            path(2),
            vec![bitstr!("0"), bitstr!("1")],
        )
        .unwrap();
        let quot = make_certificate(LanguageId::EqSizePartition, &balanced).unwrap();
        for (v, c) in quot.iter().enumerate() {
            let (q, label) = quotient_decode(c).unwrap();
            assert_eq!(q, balanced);
            assert_eq!(label, v);
        }

        let sym = make_certificate(LanguageId::FpfSymmetryOnTrees, &eps(path(4))).unwrap();
        for (v, c) in sym.iter().enumerate() {
            let (tree, rank) = symmetry_decode(c).unwrap();
            assert_eq!(tree.n(), 4);
            assert!(crate::graph::trees_isomorphic(&tree, &path(4)));
            // the rank labelling really is an isomorphism onto the decoded tree
            let ranks = preorder_ranks(&path(4), canonical_root(&path(4)));
            assert_eq!(rank, ranks[v]);
        }
    }

    #[test]
    fn certificate_size_is_the_longest_label() {
        assert_eq!(cert_size(&vec![]), 0);
        assert_eq!(
            cert_size(&vec![bitstr!("10"), BitString::new(), bitstr!("0110")]),
            4
        );
    }
}

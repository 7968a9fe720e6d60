//! A desk-scale laboratory for local distributed decision.
//!
//! Everything here runs on graphs small enough to enumerate exhaustively, so
//! claims about local algorithms — "this decider is exact", "this verifier is
//! sound", "this certificate is as small as possible" — can be checked
//! against brute-force ground truth rather than trusted.
//!
//! The moving parts:
//!
//! * [`graph`] — connected topologies, per-node inputs, identifier
//!   assignments, radius-`t` views, isomorphism tools, and exhaustive
//!   instance enumeration.
//! * [`bits`] — the bit-string input/certificate alphabet and a
//!   self-delimiting, canonically-decodable framing for composite payloads.
//! * [`lang`] — the language catalog with global membership oracles.
//! * [`cert`] — certificate codecs and the honest prover.
//! * [`runtime`] — view flooding, decider/verifier execution, and
//!   completeness/soundness compliance checks.
//! * [`lift`] — quotient lifts: the blow-up construction, its radius-1
//!   conditions, fiber structure, and the quotient-certificate verifier.
//! * [`search`] — exhaustive certificate-space traversal for soundness
//!   proofs and minimum-size measurements.
//! * [`algo`] — the concrete decider/verifier catalog.
//! * [`gadget`] — indistinguishability constructions that fool weak
//!   verifiers: splices, transplants, and partition gadgets.
//! * [`report`] — certificate-size measurement tables.

pub mod algo;
pub mod bits;
pub mod cert;
pub mod gadget;
pub mod graph;
pub mod lang;
pub mod lift;
pub mod report;
pub mod runtime;
pub mod search;

//! Graphs, configurations, identifiers, views, and instance generators.

pub mod config;
pub mod enumerate;
pub mod io;
pub mod iso;
pub mod topology;
pub mod view;

pub use config::{
    default_universe_bound, ConfigError, Configuration, IdAssignment, IdError, IdStrategy,
};
pub use enumerate::{enumerate_instances, prufer_decode, InstanceKind, DEFAULT_ENUM_CAP};
pub use iso::{
    canonical_form, find_fpf_automorphism, graphs_isomorphic, rooted_tree_code,
    rooted_trees_isomorphic, trees_isomorphic, CanonicalForm, Permutation, CANONICAL_CAP,
};
pub use topology::{build_graph, complete, cycle, path, star, GraphError, GraphTopology};
pub use view::{ball, views_isomorphic, RadiusView};

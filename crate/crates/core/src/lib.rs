//! Line digraph combinatorics.
//!
//! * [`digraph`]: the simple loop-free [`Digraph`] value type.
//! * [`line`]: the line digraph `L(G)`, `phi(G)` and the closed-form maximum.
//! * [`recognition`]: forbidden-pattern recognition and root reconstruction.
//! * [`extremal`]: generators for the extremal roots and line digraphs.
//! * [`iso`]: isomorphism tests and canonical forms.
//! * [`enumerate`]: enumeration of connected roots and verification of the
//!   maximum-`phi` results over them.

pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod iso;
pub mod line;
pub mod recognition;

pub use digraph::{Arc, Digraph, Vertex};
pub use enumerate::{
    enumerate_connected, enumerate_connected_with, verify_max, verify_max_with, Check,
    LemmaChecks, SearchMode, SearchStrategy, StrategyRegistry, VerificationReport, Workers,
};
pub use error::{Error, Result};
pub use extremal::{check_arc_degree_bound, gen_max_line, gen_o, gen_star, StarSpec};
pub use iso::{are_isomorphic, canonical_form, CanonicalForm};
pub use line::{line_digraph, max_arcs, phi, LineDigraph};
pub use recognition::{
    find_bad_z, find_deviation, find_eight, find_shortcut, is_line_digraph, reconstruct_root,
    DetectorRegistry, PatternDetector, PatternKind, PatternWitness, RecognitionVerdict,
};

//! Arc-disjoint 4-cycles and feedback arc sets in bipartite tournaments.
//!
//! For every `k >= 0` a bipartite tournament either contains `k` pairwise
//! arc-disjoint 4-cycles or has a feedback arc set of at most `7 (k - 1)`
//! arcs. [`engine::solve`] produces one or the other, and every answer can be
//! checked with the predicates in [`graph`].
//!
//! * [`graph`]: the dense bipartite digraph type and its primitives.
//! * [`census`]: induced four-vertex paths and the per-vertex class counts.
//! * [`c4free`]: feedback arc sets of size at most the number of absent
//!   pairs for 4-cycle-free graphs.
//! * [`packing`]: greedy maximal 4-cycle packing.
//! * [`engine`]: the cycles-or-feedback-set dichotomy.
//! * [`oracle`]: exponential exact references for testing.
//! * [`gen`]: seeded instance generators.
//! * [`cli`]: the `bt-fas` command line and the instance file format.

pub mod c4free;
pub mod census;
pub mod cli;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod packing;

pub use c4free::{fas_c4free, find_4cycle, FasCertificate};
pub use engine::{solve, SolveOutcome};
pub use graph::{Arc, BipartiteDigraph, FourCycle, GraphError, Orientation, Side, VertexOrder, VertexRef};

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

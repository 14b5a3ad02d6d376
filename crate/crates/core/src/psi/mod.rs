//! δ, Ψ, Δ, witness sets, the chromatic polynomial, and the graph identities
//! tying them together.

mod chromatic;
mod delta;
mod identity;
mod witness;

pub use chromatic::{chromatic, chromatic_checked, count_colorings};
pub use delta::{
    delta_ordering, delta_pair, delta_poly, digraph_delta_histogram, graph_delta_histogram,
    graph_delta_histogram_checked, psi_digraph, psi_from_delta, psi_graph, DeltaContext,
};
pub(crate) use identity::defect_in_lower_basis;
pub use identity::{
    acyclic_orientations, acyclic_orientations_checked, psi_decomposition_check, reflected_chromatic,
    verify_graph_identity, DecompositionReport, GraphIdentityReport,
};
pub use witness::{
    digraph_witnesses, digraph_witnesses_by_definition, graph_witnesses, reversed_arcs, WitnessKind, WitnessSet,
};

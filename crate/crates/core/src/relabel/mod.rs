//! Relabelling calculus: Algorithm A, single-vertex insertion, turning
//! vertices, sink-elimination sequences and the Ω-defect.

mod algorithm_a;
mod defect;
mod gamma;
mod insertion;
mod turning;

pub use algorithm_a::{algorithm_a, n_set, LMap};
pub use defect::{d_interpretation_check, interpretation_hypothesis, theorem_defect, DInterpretation};
pub use gamma::{
    ideal_set_check, is_sink_elimination, sink_elimination_orderings, sink_elimination_sequence, succeq_evidence,
    GammaSequence, SucceqEvidence,
};
pub use insertion::{
    check_large_m, delta_diff_large_relabel, delta_insertion_closed, delta_insertion_direct, delta_insertion_poly,
    insertion_context, InsertionContext, LargeRelabelReport,
};
pub use turning::{
    admissible_r, c_stats, delta_diff_turning, p_set, turning_vertex, Admissible, CStats, TurningReport,
};

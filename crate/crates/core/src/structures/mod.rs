//! Labelled graphs, acyclic digraphs, posets and orderings.

mod digraph;
pub mod format;
mod graph;
mod ordering;
mod poset;

pub use digraph::AcyclicDigraph;
pub use format::{parse, Instance};
pub use graph::LabeledGraph;
pub use ordering::Ordering;
pub use poset::Poset;

/// Vertex label. Labels are positive integers.
pub type Vertex = u32;

/// Adjacency is kept in `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;

/// Indices of the set bits of `mask`, ascending.
pub(crate) fn mask_iter(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

//! Exact ordering-sum, order and chromatic polynomials of labelled graphs and
//! acyclic digraphs, with the witness/relabelling calculus that decides when
//! they coincide.

pub mod enumerate;
pub mod error;
pub mod finding;
pub mod gn;
pub mod order_poly;
pub mod poly;
pub mod psi;
pub mod relabel;
pub mod scan;
pub mod structures;

pub use error::{Error, Result};
pub use finding::Finding;
pub use poly::{BinomPoly, RatPoly, ZPoly};
pub use structures::{AcyclicDigraph, Instance, LabeledGraph, Ordering, Poset, Vertex};

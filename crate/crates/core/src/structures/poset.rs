use std::fmt;

use crate::error::{Error, Result};

use super::{AcyclicDigraph, Ordering, Vertex};

/// A finite poset on positive-integer elements.
///
/// The strict relation is stored as a transitively closed acyclic digraph,
/// which gives linear extensions and reachability for free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    strict: AcyclicDigraph,
}

impl Poset {
    /// D̄: the reflexive transitive closure of `d`.
    pub fn from_digraph(d: &AcyclicDigraph) -> Self {
        let mut arcs = Vec::new();
        for &u in d.vertices() {
            for v in d.reachable_from(u).expect("vertex of d") {
                arcs.push((u, v));
            }
        }
        Poset { strict: AcyclicDigraph::new(d.vertices(), &arcs).expect("closure of an acyclic relation is acyclic") }
    }

    /// The poset generated by the given strict relations.
    pub fn generated(elements: &[Vertex], relations: &[(Vertex, Vertex)]) -> Result<Self> {
        let d = AcyclicDigraph::new(elements, relations).map_err(|e| match e {
            Error::CycleDetected(v) => Error::NotAPartialOrder(format!("cycle through {v}")),
            other => other,
        })?;
        Ok(Self::from_digraph(&d))
    }

    /// Builds a poset from an explicit `≤` predicate, checking the axioms.
    pub fn from_leq(elements: &[Vertex], leq: impl Fn(Vertex, Vertex) -> bool) -> Result<Self> {
        for &u in elements {
            if !leq(u, u) {
                return Err(Error::NotAPartialOrder(format!("{u} ≤ {u} fails")));
            }
            for &v in elements {
                if u != v && leq(u, v) && leq(v, u) {
                    return Err(Error::NotAPartialOrder(format!("{u} and {v} are mutually ≤")));
                }
                for &w in elements {
                    if leq(u, v) && leq(v, w) && !leq(u, w) {
                        return Err(Error::NotAPartialOrder(format!("{u} ≤ {v} ≤ {w} but not {u} ≤ {w}")));
                    }
                }
            }
        }
        let mut rel = Vec::new();
        for &u in elements {
            for &v in elements {
                if u != v && leq(u, v) {
                    rel.push((u, v));
                }
            }
        }
        Self::generated(elements, &rel)
    }

    /// The chain 1 < 2 < ... < n.
    pub fn chain(n: usize) -> Self {
        let els: Vec<Vertex> = (1..=n as Vertex).collect();
        let rel: Vec<_> = els.windows(2).map(|w| (w[0], w[1])).collect();
        Self::generated(&els, &rel).expect("a chain is a partial order")
    }

    /// n pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        let els: Vec<Vertex> = (1..=n as Vertex).collect();
        Self::generated(&els, &[]).expect("an antichain is a partial order")
    }

    pub fn size(&self) -> usize {
        self.strict.order()
    }

    pub fn elements(&self) -> &[Vertex] {
        self.strict.vertices()
    }

    /// u ≺ v.
    pub fn less(&self, u: Vertex, v: Vertex) -> bool {
        self.strict.has_arc(u, v)
    }

    /// u ⪯ v.
    pub fn leq(&self, u: Vertex, v: Vertex) -> bool {
        (u == v && self.strict.contains(u)) || self.less(u, v)
    }

    /// The strict relation as a transitively closed digraph.
    pub fn strict_digraph(&self) -> &AcyclicDigraph {
        &self.strict
    }

    /// OP(P), lexicographically ordered.
    pub fn linear_extensions(&self) -> Vec<Ordering> {
        self.strict.linear_extensions()
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(elements={:?}, less={:?})", self.elements(), self.strict.arcs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_is_reflexive_transitive() {
        let d = AcyclicDigraph::new(&[1, 2, 3], &[(1, 2), (2, 3)]).unwrap();
        let p = d.poset();
        assert!(p.leq(1, 1));
        assert!(p.leq(1, 3));
        assert!(p.less(1, 3));
        assert!(!p.leq(3, 1));
        assert_eq!(p.linear_extensions().len(), 1);
    }

    #[test]
    fn from_leq_checks_axioms() {
        assert!(Poset::from_leq(&[1, 2], |u, v| u <= v).is_ok());
        assert!(Poset::from_leq(&[1, 2], |u, v| u != v).is_err());
        assert!(Poset::from_leq(&[1, 2, 3], |u, v| u == v || (u, v) == (1, 2) || (u, v) == (2, 3)).is_err());
        assert!(matches!(Poset::generated(&[1, 2], &[(1, 2), (2, 1)]), Err(Error::NotAPartialOrder(_))));
    }
}

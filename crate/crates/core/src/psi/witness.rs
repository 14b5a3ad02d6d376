use std::collections::BTreeSet;

use serde::Serialize;

use crate::structures::{AcyclicDigraph, LabeledGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Graph,
    Digraph,
}

/// Label-ordered triples {a < b < c} that obstruct Ψ from matching the
/// classical polynomial.
///
/// Graph witness: ac is the only edge among the three. Digraph witness:
/// (c, a) is an arc and b is incomparable to both a and c.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WitnessSet {
    pub kind: WitnessKind,
    pub triples: BTreeSet<[Vertex; 3]>,
}

impl WitnessSet {
    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn contains(&self, t: [Vertex; 3]) -> bool {
        self.triples.contains(&t)
    }

    /// W(·, u): the triples containing u.
    pub fn containing(&self, u: Vertex) -> WitnessSet {
        WitnessSet { kind: self.kind, triples: self.triples.iter().filter(|t| t.contains(&u)).copied().collect() }
    }
}

/// W(G).
pub fn graph_witnesses(g: &LabeledGraph) -> WitnessSet {
    let n = g.order() as Vertex;
    let mut triples = BTreeSet::new();
    for a in 1..=n {
        for c in a + 2..=n {
            if !g.has_edge(a, c) {
                continue;
            }
            for b in a + 1..c {
                if !g.has_edge(a, b) && !g.has_edge(b, c) {
                    triples.insert([a, b, c]);
                }
            }
        }
    }
    WitnessSet { kind: WitnessKind::Graph, triples }
}

/// W(D), using the equivalent test c ⊀ b and b ⊀ a once (c, a) is an arc.
pub fn digraph_witnesses(d: &AcyclicDigraph) -> WitnessSet {
    let mut triples = BTreeSet::new();
    for (c, a) in d.arcs() {
        if c < a {
            continue;
        }
        for &b in d.vertices() {
            if a < b && b < c && !d.reaches(c, b) && !d.reaches(b, a) {
                triples.insert([a, b, c]);
            }
        }
    }
    WitnessSet { kind: WitnessKind::Digraph, triples }
}

/// W(D) straight from the incomparability definition; used to cross-check
/// [`digraph_witnesses`].
pub fn digraph_witnesses_by_definition(d: &AcyclicDigraph) -> WitnessSet {
    let vs = d.vertices();
    let mut triples = BTreeSet::new();
    for (x, &a) in vs.iter().enumerate() {
        for (y, &b) in vs.iter().enumerate().skip(x + 1) {
            for &c in &vs[y + 1..] {
                if d.has_arc(c, a) && d.incomparable(a, b) && d.incomparable(c, b) {
                    triples.insert([a, b, c]);
                }
            }
        }
    }
    WitnessSet { kind: WitnessKind::Digraph, triples }
}

/// Re(D): arcs pointing from a larger label to a smaller one.
pub fn reversed_arcs(d: &AcyclicDigraph) -> Vec<(Vertex, Vertex)> {
    d.arcs().into_iter().filter(|&(a, b)| a > b).collect()
}

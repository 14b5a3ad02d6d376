use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Result;
use crate::structures::{AcyclicDigraph, Vertex};

/// The bijection V → [n] built by repeatedly removing the largest sink.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LMap {
    pub assignment: BTreeMap<Vertex, Vertex>,
}

impl LMap {
    pub fn get(&self, v: Vertex) -> Vertex {
        self.assignment[&v]
    }

    /// Vertices listed by decreasing L value: a sink-elimination ordering.
    pub fn elimination_order(&self) -> Vec<Vertex> {
        let mut vs: Vec<_> = self.assignment.iter().map(|(&v, &l)| (l, v)).collect();
        vs.sort_unstable_by(|x, y| y.cmp(x));
        vs.into_iter().map(|(_, v)| v).collect()
    }

    /// D_L: `d` with every vertex v relabelled as L(v).
    pub fn apply(&self, d: &AcyclicDigraph) -> AcyclicDigraph {
        d.relabel(&self.assignment).expect("L is a bijection onto [n]")
    }
}

pub fn algorithm_a(d: &AcyclicDigraph) -> LMap {
    let n = d.order();
    let mut remaining: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut assignment = BTreeMap::new();
    while remaining != 0 {
        // indices follow label order, so the largest sink has the highest index
        let u = (0..n)
            .rev()
            .find(|&i| remaining >> i & 1 == 1 && d.out_mask(i) & remaining == 0)
            .expect("a nonempty acyclic digraph has a sink");
        assignment.insert(d.vertices()[u], remaining.count_ones() as Vertex);
        remaining &= !(1 << u);
    }
    LMap { assignment }
}

/// N_D[c, b] = {c' ∈ R[c] \ R[b] : L(c') < L(y) for all y ∈ R(c) ∩ R(b)}.
pub fn n_set(d: &AcyclicDigraph, l: &LMap, c: Vertex, b: Vertex) -> Result<BTreeSet<Vertex>> {
    let rc: BTreeSet<Vertex> = d.reachable_from(c)?.into_iter().collect();
    let rb: BTreeSet<Vertex> = d.reachable_from(b)?.into_iter().collect();
    let common: Vec<Vertex> = rc.intersection(&rb).copied().collect();
    let closed_c = rc.iter().copied().chain([c]);
    Ok(closed_c
        .filter(|v| *v != b && !rb.contains(v))
        .filter(|&v| common.iter().all(|&y| l.get(v) < l.get(y)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::reversed_arcs;

    #[test]
    fn fixtures() {
        let d2 = AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap();
        let l = algorithm_a(&d2);
        assert_eq!(l.assignment, BTreeMap::from([(2, 3), (1, 2), (3, 1)]));
        assert_eq!(l.apply(&d2).arcs(), vec![(1, 2)]);
        assert_eq!(l.elimination_order(), vec![2, 1, 3]);

        let id = BTreeMap::from([(1, 1), (2, 2), (3, 3)]);
        assert_eq!(algorithm_a(&AcyclicDigraph::edgeless(&[1, 2, 3]).unwrap()).assignment, id);
        let d1 = AcyclicDigraph::new(&[1, 2, 3], &[(1, 3)]).unwrap();
        assert_eq!(algorithm_a(&d1).assignment, id);
    }

    #[test]
    fn n_set_fixtures() {
        let d1 = AcyclicDigraph::new(&[1, 2, 3], &[(1, 3)]).unwrap();
        let l1 = algorithm_a(&d1);
        assert_eq!(n_set(&d1, &l1, 2, 1).unwrap(), BTreeSet::from([2]));
        let d2 = AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap();
        let l2 = algorithm_a(&d2);
        assert_eq!(n_set(&d2, &l2, 3, 2).unwrap(), BTreeSet::from([3, 1]));
        assert_eq!(n_set(&d2, &l2, 2, 3).unwrap(), BTreeSet::from([2]));
        assert!(n_set(&d2, &l2, 2, 9).is_err());
    }

    #[test]
    fn l_respects_reachability() {
        let d = AcyclicDigraph::new(&[2, 4, 5, 6, 9], &[(9, 2), (6, 4), (4, 5), (9, 5)]).unwrap();
        let l = algorithm_a(&d);
        for (u, v) in d.arcs() {
            assert!(l.get(u) < l.get(v));
        }
        assert!(reversed_arcs(&l.apply(&d)).is_empty());
    }
}

//! Which graphs admit a relabelling with no witnesses (the family 𝒢_n),
//! constructive labellings for structured graphs, and the tree scan.

mod construct;
mod trees;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finding::Finding;
use crate::psi::graph_witnesses;
use crate::structures::{LabeledGraph, Vertex};

pub use construct::{caterpillar_labeling, structured_membership, Construction, Rule};
pub use trees::{core_is_path, tree_conjecture_scan, TreeScanReport, TreeScanRow};

/// Default largest order accepted by [`gn_membership`].
pub const DEFAULT_MEMBERSHIP_LIMIT: usize = 9;

/// For every edge ac with a < c, each b strictly between is adjacent to a or
/// c. Cross-checked against the witness set.
pub fn vanishing_characterization(g: &LabeledGraph) -> Result<bool> {
    let mut ok = true;
    'edges: for (a, c) in g.edges() {
        for b in a + 1..c {
            if !g.has_edge(a, b) && !g.has_edge(b, c) {
                ok = false;
                break 'edges;
            }
        }
    }
    if ok != graph_witnesses(g).is_empty() {
        return Err(Finding::new("vanishing-characterization", format!("characterization says {ok}"), &g.into()).into());
    }
    Ok(ok)
}

/// A relabelling ω with W(G_ω) = ∅, if one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelabelWitness {
    /// ω(v) = omega[v - 1].
    pub omega: Option<Vec<Vertex>>,
    /// Complete or partial assignments visited by the search.
    pub searched: u64,
}

struct Search<'a> {
    g: &'a LabeledGraph,
    n: usize,
    omega: Vec<Vertex>,
    // vertex holding each label, 0 when free
    holder: Vec<Vertex>,
    visited: u64,
}

impl Search<'_> {
    fn edge_labels(&self, x: Vertex, y: Vertex) -> bool {
        self.g.has_edge(self.holder[x as usize], self.holder[y as usize])
    }

    // Any witness among assigned labels that involves label l?
    fn violates(&self, l: Vertex) -> bool {
        let n = self.n as Vertex;
        let taken = |x: Vertex| self.holder[x as usize] != 0;
        for x in 1..=n {
            if x == l || !taken(x) {
                continue;
            }
            for y in x + 1..=n {
                if y == l || !taken(y) {
                    continue;
                }
                let mut t = [l, x, y];
                t.sort_unstable();
                let [a, b, c] = t;
                if self.edge_labels(a, c) && !self.edge_labels(a, b) && !self.edge_labels(b, c) {
                    return true;
                }
            }
        }
        false
    }

    fn place(&mut self, v: usize) -> bool {
        self.visited += 1;
        if v > self.n {
            return true;
        }
        for l in 1..=self.n as Vertex {
            if self.holder[l as usize] != 0 {
                continue;
            }
            self.holder[l as usize] = v as Vertex;
            self.omega[v - 1] = l;
            if !self.violates(l) && self.place(v + 1) {
                return true;
            }
            self.holder[l as usize] = 0;
        }
        false
    }
}

/// Searches bijections ω in lexicographic order of (ω(1), ..., ω(n)),
/// rejecting a partial assignment as soon as its labels contain a witness.
/// Returns the lexicographically least ω with W(G_ω) = ∅.
pub fn gn_membership_with_limit(g: &LabeledGraph, limit: usize) -> Result<RelabelWitness> {
    let n = g.order();
    if n > limit {
        return Err(Error::LimitExceeded { what: "membership order".into(), value: n, limit });
    }
    if n == 0 {
        return Ok(RelabelWitness { omega: Some(vec![]), searched: 1 });
    }
    let branches: Vec<(Option<Vec<Vertex>>, u64)> = (1..=n as Vertex)
        .into_par_iter()
        .map(|first| {
            let mut s = Search { g, n, omega: vec![0; n], holder: vec![0; n + 1], visited: 1 };
            s.holder[first as usize] = 1;
            s.omega[0] = first;
            let found = s.place(2);
            (found.then_some(s.omega), s.visited)
        })
        .collect();
    // the search is exhaustive up to the first successful branch
    let mut searched = 0;
    for (omega, visited) in branches {
        searched += visited;
        if let Some(omega) = omega {
            if !graph_witnesses(&g.relabel(&omega)?).is_empty() {
                return Err(
                    Finding::new("membership-witness", format!("ω = {omega:?} leaves witnesses"), &g.into()).into()
                );
            }
            return Ok(RelabelWitness { omega: Some(omega), searched });
        }
    }
    Ok(RelabelWitness { omega: None, searched })
}

pub fn gn_membership(g: &LabeledGraph) -> Result<RelabelWitness> {
    gn_membership_with_limit(g, DEFAULT_MEMBERSHIP_LIMIT)
}

fn is_member(g: &LabeledGraph) -> Result<bool> {
    Ok(gn_membership(g)?.omega.is_some())
}

/// A disconnected graph is in 𝒢_n iff each component is. Returns the
/// membership of `g`; a disagreement is a finding.
pub fn components_check(g: &LabeledGraph) -> Result<bool> {
    let whole = is_member(g)?;
    let comps = g.components();
    if comps.len() < 2 {
        return Ok(whole);
    }
    let mut each = true;
    for c in &comps {
        each &= is_member(&g.induced_subgraph(c)?)?;
    }
    if each != whole {
        return Err(Finding::new(
            "gn-components",
            format!("G in 𝒢_n: {whole}, all components in 𝒢_n: {each}"),
            &g.into(),
        )
        .into());
    }
    Ok(whole)
}

/// Every induced subgraph of a member is a member. Returns the number of
/// induced subgraphs examined (0 when `g` is not a member).
pub fn hereditary_check(g: &LabeledGraph) -> Result<usize> {
    if !is_member(g)? {
        return Ok(0);
    }
    let n = g.order();
    assert!(n < 64);
    let mut count = 0;
    for mask in 1u64..(1 << n) - 1 {
        let keep: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as Vertex + 1).collect();
        let sub = g.induced_subgraph(&keep)?;
        count += 1;
        if !is_member(&sub)? {
            return Err(Finding::new(
                "gn-hereditary",
                format!("induced subgraph on {keep:?} is not in 𝒢_n"),
                &g.into(),
            )
            .into());
        }
    }
    Ok(count)
}

/// The end-vertex reduction: when u = 1 has N(u) = {2, ..., k}, or u = n has
/// N(u) = {k, ..., n-1}, W(G) = ∅ iff W(G - u) = ∅. Returns `None` when
/// neither end qualifies, else whether W(G) = ∅.
pub fn end_vertex_reduction(g: &LabeledGraph) -> Result<Option<bool>> {
    let n = g.order() as Vertex;
    if n == 0 {
        return Ok(None);
    }
    let first = g.neighborhood(1)?;
    let last = g.neighborhood(n)?;
    let u = if first.iter().copied().eq(2..2 + first.len() as Vertex) {
        1
    } else if last.iter().copied().eq(n - last.len() as Vertex..n) {
        n
    } else {
        return Ok(None);
    };
    let whole = graph_witnesses(g).is_empty();
    let reduced = graph_witnesses(&g.delete_vertex(u)?).is_empty();
    if whole != reduced {
        return Err(Finding::new(
            "end-vertex-reduction",
            format!("u = {u}: W(G) empty {whole}, W(G-u) empty {reduced}"),
            &g.into(),
        )
        .into());
    }
    Ok(Some(whole))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn spider() -> LabeledGraph {
        LabeledGraph::from_edges(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap()
    }

    #[test]
    fn characterization_fixtures() {
        assert!(vanishing_characterization(&LabeledGraph::path(3).unwrap()).unwrap());
        assert!(!vanishing_characterization(&LabeledGraph::from_edges(3, &[(1, 3)]).unwrap()).unwrap());
        let k222 = LabeledGraph::from_edges(
            6,
            &[(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6)],
        )
        .unwrap();
        assert!(k222.is_complete_multipartite());
        assert!(vanishing_characterization(&k222).unwrap());
    }

    #[test]
    fn membership_fixtures() {
        let wedge = LabeledGraph::from_edges(3, &[(1, 3)]).unwrap();
        assert_eq!(gn_membership(&wedge).unwrap().omega, Some(vec![1, 3, 2]));
        let star = LabeledGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(gn_membership(&star).unwrap().omega, Some(vec![1, 2, 3, 4]));
        let r = gn_membership(&spider()).unwrap();
        assert!(r.omega.is_none());
        assert!(r.searched > 7);
        let big = LabeledGraph::empty(10).unwrap();
        assert!(matches!(gn_membership(&big), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn reductions() {
        let wedge = LabeledGraph::from_edges(3, &[(1, 3)]).unwrap();
        assert!(components_check(&wedge).unwrap());
        assert_eq!(hereditary_check(&LabeledGraph::path(4).unwrap()).unwrap(), 14);
        // N(1) = {2, 3}: W(P) and W(P - 1) are both empty
        let g = LabeledGraph::from_edges(4, &[(1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(end_vertex_reduction(&g).unwrap(), Some(true));
        assert_eq!(end_vertex_reduction(&wedge).unwrap(), None);
    }
}

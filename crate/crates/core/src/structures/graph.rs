use std::fmt;

use crate::error::{Error, Result};

use super::{mask_iter, Vertex, MAX_VERTICES};

/// A simple undirected graph on the vertex set `{1, ..., n}`.
///
/// Labels matter: two isomorphic graphs with different labellings are
/// different values, because the ordering statistics depend on the labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    // adj[v - 1] has bit (w - 1) set iff vw is an edge
    adj: Vec<u64>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(LabeledGraph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for i in 0..n {
            g.adj[i] = full & !(1u64 << i);
        }
        Ok(g)
    }

    /// Path 1 - 2 - ... - n.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n as Vertex).map(|v| (v, v + 1)).collect();
        Self::from_edges(n, &edges)
    }

    /// Builds a graph from an adjacency bitmask per vertex (index 0 is vertex 1).
    pub(crate) fn from_masks(adj: Vec<u64>) -> Self {
        LabeledGraph { n: adj.len(), adj }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let (i, j) = (u as usize - 1, v as usize - 1);
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v == 0 || v as usize > self.n {
            Err(Error::UnknownVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in mask_iter(self.adj[i].checked_shr(i as u32 + 1).unwrap_or(0)) {
                out.push((i as Vertex + 1, (i + 1 + j) as Vertex + 1));
            }
        }
        out
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u == 0 || v == 0 || u as usize > self.n || v as usize > self.n {
            return false;
        }
        self.adj[u as usize - 1] >> (v - 1) & 1 == 1
    }

    /// Bitmask of neighbours of `v` (bit `w - 1` for neighbour `w`).
    pub(crate) fn mask(&self, v: Vertex) -> u64 {
        self.adj[v as usize - 1]
    }

    /// N_G(u), sorted.
    pub fn neighborhood(&self, u: Vertex) -> Result<Vec<Vertex>> {
        self.check(u)?;
        Ok(mask_iter(self.adj[u as usize - 1]).map(|j| j as Vertex + 1).collect())
    }

    pub fn degree(&self, u: Vertex) -> Result<usize> {
        self.check(u)?;
        Ok(self.adj[u as usize - 1].count_ones() as usize)
    }

    /// The subgraph induced by `keep`, relabelled order-preservingly onto
    /// `{1, ..., |keep|}`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<LabeledGraph> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check(v)?;
        }
        let mut adj = vec![0u64; keep.len()];
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[a] |= 1 << b;
                }
            }
        }
        Ok(LabeledGraph::from_masks(adj))
    }

    /// G - u, relabelled order-preservingly.
    pub fn delete_vertex(&self, u: Vertex) -> Result<LabeledGraph> {
        self.check(u)?;
        let keep: Vec<_> = self.vertices().filter(|&v| v != u).collect();
        self.induced_subgraph(&keep)
    }

    /// G_omega: vertex `v` becomes `omega[v - 1]`. `omega` must be a bijection onto [n].
    pub fn relabel(&self, omega: &[Vertex]) -> Result<LabeledGraph> {
        if omega.len() != self.n {
            return Err(Error::NotAnOrdering(format!(
                "relabelling has {} entries, graph has {} vertices",
                omega.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &w in omega {
            self.check(w)?;
            if seen >> (w - 1) & 1 == 1 {
                return Err(Error::LabelCollision(w));
            }
            seen |= 1 << (w - 1);
        }
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            let (a, b) = (omega[u as usize - 1] as usize - 1, omega[v as usize - 1] as usize - 1);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(LabeledGraph::from_masks(adj))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for i in mask_iter(frontier) {
                    next |= self.adj[i];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(mask_iter(comp).map(|i| i as Vertex + 1).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff non-adjacency is an equivalence relation, i.e. the graph is
    /// a complete multipartite graph (edgeless graphs included).
    pub fn is_complete_multipartite(&self) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        // each vertex's closed non-neighbourhood must be the same set for all its members
        for i in 0..self.n {
            let class = full & !self.adj[i];
            for j in mask_iter(class) {
                if full & !self.adj[j] != class {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::{mask_iter, Ordering, Poset, Vertex, MAX_VERTICES};

/// An acyclic digraph whose vertices are arbitrary distinct positive integers.
///
/// Vertices are stored sorted, so index order and label order coincide.
/// The strict reachability relation is computed at construction and kept
/// alongside the arcs; every mutation builds a fresh value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AcyclicDigraph {
    labels: Vec<Vertex>,
    out: Vec<u64>,
    inn: Vec<u64>,
    reach: Vec<u64>,
}

impl AcyclicDigraph {
    /// Builds a digraph on `vertices` with the given arcs. Arc endpoints
    /// must be listed in `vertices`; duplicate arcs collapse.
    pub fn new(vertices: &[Vertex], arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        let mut labels = vertices.to_vec();
        labels.sort_unstable();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::LabelCollision(w[0]));
            }
        }
        if labels.first() == Some(&0) {
            return Err(Error::ZeroLabel);
        }
        let n = labels.len();
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        for &(u, v) in arcs {
            let i = labels.binary_search(&u).map_err(|_| Error::UnknownVertex(u))?;
            let j = labels.binary_search(&v).map_err(|_| Error::UnknownVertex(v))?;
            if i == j {
                return Err(Error::SelfLoop(u));
            }
            out[i] |= 1 << j;
            inn[j] |= 1 << i;
        }
        Self::from_parts(labels, out, inn)
    }

    /// Builds a digraph whose vertex set is exactly the set of arc endpoints
    /// together with `extra`.
    pub fn from_arcs(arcs: &[(Vertex, Vertex)], extra: &[Vertex]) -> Result<Self> {
        let mut vs: Vec<Vertex> = arcs.iter().flat_map(|&(u, v)| [u, v]).chain(extra.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        Self::new(&vs, arcs)
    }

    /// Edgeless digraph on the given labels.
    pub fn edgeless(vertices: &[Vertex]) -> Result<Self> {
        Self::new(vertices, &[])
    }

    fn from_parts(labels: Vec<Vertex>, out: Vec<u64>, inn: Vec<u64>) -> Result<Self> {
        let n = labels.len();
        // Kahn's algorithm; the order is reused to fill reachability bottom-up.
        let mut indeg: Vec<u32> = inn.iter().map(|m| m.count_ones()).collect();
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(i) = stack.pop() {
            order.push(i);
            for j in mask_iter(out[i]) {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).expect("some vertex left over");
            return Err(Error::CycleDetected(labels[stuck]));
        }
        let mut reach = vec![0u64; n];
        for &i in order.iter().rev() {
            let mut r = 0u64;
            for j in mask_iter(out[i]) {
                r |= (1 << j) | reach[j];
            }
            reach[i] = r;
        }
        Ok(AcyclicDigraph { labels, out, inn, reach })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// Vertex labels in increasing order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.labels.binary_search(&v).is_ok()
    }

    pub fn max_label(&self) -> Option<Vertex> {
        self.labels.last().copied()
    }

    pub(crate) fn index(&self, v: Vertex) -> Result<usize> {
        self.labels.binary_search(&v).map_err(|_| Error::UnknownVertex(v))
    }

    pub(crate) fn out_mask(&self, i: usize) -> u64 {
        self.out[i]
    }

    pub(crate) fn in_mask(&self, i: usize) -> u64 {
        self.inn[i]
    }

    fn labels_of(&self, mask: u64) -> Vec<Vertex> {
        mask_iter(mask).map(|i| self.labels[i]).collect()
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in 0..self.order() {
            for j in mask_iter(self.out[i]) {
                out.push((self.labels[i], self.labels[j]));
            }
        }
        out
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index(u), self.index(v)) {
            (Ok(i), Ok(j)) => self.out[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// `u ≺_D v`: a directed path with at least one arc leads from `u` to `v`.
    pub fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index(u), self.index(v)) {
            (Ok(i), Ok(j)) => self.reach[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// Distinct vertices neither of which reaches the other.
    pub fn incomparable(&self, u: Vertex, v: Vertex) -> bool {
        u != v && !self.reaches(u, v) && !self.reaches(v, u)
    }

    /// F_D(u): out-neighbours.
    pub fn out_neighbors(&self, u: Vertex) -> Result<Vec<Vertex>> {
        Ok(self.labels_of(self.out[self.index(u)?]))
    }

    /// B_D(u): in-neighbours.
    pub fn in_neighbors(&self, u: Vertex) -> Result<Vec<Vertex>> {
        Ok(self.labels_of(self.inn[self.index(u)?]))
    }

    /// R_D(u): vertices reachable from `u` by a non-empty path.
    pub fn reachable_from(&self, u: Vertex) -> Result<Vec<Vertex>> {
        Ok(self.labels_of(self.reach[self.index(u)?]))
    }

    /// R_D[u] = R_D(u) ∪ {u}.
    pub fn reachable_closed(&self, u: Vertex) -> Result<Vec<Vertex>> {
        let i = self.index(u)?;
        Ok(self.labels_of(self.reach[i] | 1 << i))
    }

    pub fn is_sink(&self, u: Vertex) -> Result<bool> {
        Ok(self.out[self.index(u)?] == 0)
    }

    pub fn is_source(&self, u: Vertex) -> Result<bool> {
        Ok(self.inn[self.index(u)?] == 0)
    }

    pub fn sinks(&self) -> Vec<Vertex> {
        (0..self.order()).filter(|&i| self.out[i] == 0).map(|i| self.labels[i]).collect()
    }

    pub fn sources(&self) -> Vec<Vertex> {
        (0..self.order()).filter(|&i| self.inn[i] == 0).map(|i| self.labels[i]).collect()
    }

    /// Re(D): arcs `(a, b)` with `a > b`.
    pub fn reversed_arcs(&self) -> Vec<(Vertex, Vertex)> {
        self.arcs().into_iter().filter(|&(a, b)| a > b).collect()
    }

    /// The subdigraph induced by `keep`, labels unchanged.
    pub fn induced(&self, keep: &[Vertex]) -> Result<AcyclicDigraph> {
        let mut mask = 0u64;
        for &v in keep {
            mask |= 1 << self.index(v)?;
        }
        let labels = self.labels_of(mask);
        let arcs: Vec<_> = self
            .arcs()
            .into_iter()
            .filter(|&(u, v)| labels.binary_search(&u).is_ok() && labels.binary_search(&v).is_ok())
            .collect();
        AcyclicDigraph::new(&labels, &arcs)
    }

    /// D - u.
    pub fn delete_vertex(&self, u: Vertex) -> Result<AcyclicDigraph> {
        self.index(u)?;
        let keep: Vec<_> = self.labels.iter().copied().filter(|&v| v != u).collect();
        self.induced(&keep)
    }

    /// Relabels through a partial injection; vertices absent from `map` keep
    /// their label.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<AcyclicDigraph> {
        for &k in map.keys() {
            self.index(k)?;
        }
        let f = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        let labels: Vec<_> = self.labels.iter().map(|&v| f(v)).collect();
        let arcs: Vec<_> = self.arcs().into_iter().map(|(u, v)| (f(u), f(v))).collect();
        AcyclicDigraph::new(&labels, &arcs)
    }

    /// D_{a -> r}.
    pub fn relabel_vertex(&self, a: Vertex, r: Vertex) -> Result<AcyclicDigraph> {
        self.relabel(&BTreeMap::from([(a, r)]))
    }

    /// Applies `f` to every label; `f` must be injective on the vertex set.
    pub fn map_labels(&self, f: impl Fn(Vertex) -> Vertex) -> Result<AcyclicDigraph> {
        let map: BTreeMap<_, _> = self.labels.iter().map(|&v| (v, f(v))).collect();
        self.relabel(&map)
    }

    /// Relabels the vertices onto `{1, ..., n}` preserving their relative order.
    pub fn normalized(&self) -> AcyclicDigraph {
        let map: BTreeMap<_, _> = self.labels.iter().enumerate().map(|(i, &v)| (v, i as Vertex + 1)).collect();
        self.relabel(&map).expect("order-preserving relabel is injective")
    }

    /// True iff `seq` lists every vertex once and respects every arc.
    pub fn is_linear_extension(&self, seq: &[Vertex]) -> bool {
        if seq.len() != self.order() {
            return false;
        }
        let mut placed = 0u64;
        for &v in seq {
            let Ok(i) = self.index(v) else { return false };
            if placed >> i & 1 == 1 || self.inn[i] & !placed != 0 {
                return false;
            }
            placed |= 1 << i;
        }
        true
    }

    /// Visits every D-respecting ordering in lexicographic order of labels.
    pub fn for_each_linear_extension(&self, mut f: impl FnMut(&[Vertex])) {
        let mut seq = Vec::with_capacity(self.order());
        self.extend(0, &mut seq, &mut f);
    }

    fn extend(&self, placed: u64, seq: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
        if seq.len() == self.order() {
            f(seq);
            return;
        }
        for i in 0..self.order() {
            if placed >> i & 1 == 0 && self.inn[i] & !placed == 0 {
                seq.push(self.labels[i]);
                self.extend(placed | 1 << i, seq, f);
                seq.pop();
            }
        }
    }

    /// The lexicographically least D-respecting ordering.
    pub fn least_linear_extension(&self) -> Ordering {
        let mut placed = 0u64;
        let mut seq = Vec::with_capacity(self.order());
        while seq.len() < self.order() {
            let i = (0..self.order())
                .find(|&i| placed >> i & 1 == 0 && self.inn[i] & !placed == 0)
                .expect("acyclic digraphs always have an available vertex");
            seq.push(self.labels[i]);
            placed |= 1 << i;
        }
        Ordering::from_vec_unchecked(seq)
    }

    /// OP(D), lexicographically ordered.
    pub fn linear_extensions(&self) -> Vec<Ordering> {
        let mut out = Vec::new();
        self.for_each_linear_extension(|s| out.push(Ordering::from_vec_unchecked(s.to_vec())));
        out
    }

    pub fn count_linear_extensions(&self) -> u64 {
        let mut c = 0;
        self.for_each_linear_extension(|_| c += 1);
        c
    }

    /// The reflexive transitive closure as a poset.
    pub fn poset(&self) -> Poset {
        Poset::from_digraph(self)
    }
}

impl fmt::Debug for AcyclicDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AcyclicDigraph(V={:?}, A={:?})", self.labels, self.arcs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(arcs: &[(Vertex, Vertex)]) -> AcyclicDigraph {
        AcyclicDigraph::new(&[1, 2, 3], arcs).unwrap()
    }

    #[test]
    fn closure_of_single_arc() {
        let g = d(&[(1, 3)]);
        assert!(g.reaches(1, 3));
        assert!(!g.reaches(3, 1));
        assert!(!g.reaches(1, 2));
        assert!(g.incomparable(1, 2));
    }

    #[test]
    fn closure_of_two_step_path() {
        let g = d(&[(1, 2), (2, 3)]);
        assert!(g.reaches(1, 3));
        assert_eq!(g.reachable_from(1).unwrap(), vec![2, 3]);
        assert_eq!(g.reachable_closed(2).unwrap(), vec![2, 3]);
    }

    #[test]
    fn two_cycle_rejected() {
        assert!(matches!(AcyclicDigraph::new(&[1, 2, 3], &[(1, 2), (2, 1)]), Err(Error::CycleDetected(_))));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(AcyclicDigraph::new(&[1, 2], &[(1, 5)]), Err(Error::UnknownVertex(5))));
        assert!(matches!(AcyclicDigraph::new(&[1, 1], &[]), Err(Error::LabelCollision(1))));
        assert!(matches!(AcyclicDigraph::new(&[0, 1], &[]), Err(Error::ZeroLabel)));
        assert!(matches!(AcyclicDigraph::new(&[1, 2], &[(2, 2)]), Err(Error::SelfLoop(2))));
    }

    #[test]
    fn table_one_extensions() {
        let ext = |g: &AcyclicDigraph| -> Vec<Vec<Vertex>> {
            g.linear_extensions().into_iter().map(|o| o.into_vec()).collect()
        };
        assert_eq!(ext(&d(&[(1, 3)])), vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3]]);
        assert_eq!(ext(&d(&[(3, 1)])), vec![vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]);
        assert_eq!(ext(&d(&[])).len(), 6);
    }

    #[test]
    fn relabel_examples() {
        let d2 = d(&[(3, 1)]);
        let r = d2.relabel_vertex(2, 4).unwrap();
        assert_eq!(r.vertices(), &[1, 3, 4]);
        assert_eq!(r.arcs(), vec![(3, 1)]);
        assert_eq!(d2.relabel(&BTreeMap::new()).unwrap(), d2);
        let doubled = d(&[(1, 3)]).map_labels(|v| 2 * v).unwrap();
        assert_eq!(doubled.vertices(), &[2, 4, 6]);
        assert_eq!(doubled.arcs(), vec![(2, 6)]);
        assert!(matches!(d2.relabel_vertex(2, 3), Err(Error::LabelCollision(3))));
    }

    #[test]
    fn deletion_sinks_sources() {
        let d2 = d(&[(3, 1)]);
        let del = d2.delete_vertex(2).unwrap();
        assert_eq!(del.vertices(), &[1, 3]);
        assert_eq!(del.arcs(), vec![(3, 1)]);
        assert_eq!(d2.sinks(), vec![1, 2]);
        assert_eq!(d2.sources(), vec![2, 3]);
        assert_eq!(d2.reversed_arcs(), vec![(3, 1)]);
        assert!(matches!(d2.delete_vertex(9), Err(Error::UnknownVertex(9))));
    }
}

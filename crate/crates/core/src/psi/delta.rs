use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{BinomPoly, ZPoly};
use crate::structures::{mask_iter, AcyclicDigraph, LabeledGraph, Ordering, Vertex};

/// Where δ is evaluated: a labelled graph or an acyclic digraph.
#[derive(Debug, Clone, Copy)]
pub enum DeltaContext<'a> {
    Graph(&'a LabeledGraph),
    Digraph(&'a AcyclicDigraph),
}

impl<'a> From<&'a LabeledGraph> for DeltaContext<'a> {
    fn from(g: &'a LabeledGraph) -> Self {
        DeltaContext::Graph(g)
    }
}

impl<'a> From<&'a AcyclicDigraph> for DeltaContext<'a> {
    fn from(d: &'a AcyclicDigraph) -> Self {
        DeltaContext::Digraph(d)
    }
}

impl DeltaContext<'_> {
    fn contains(&self, v: Vertex) -> bool {
        match self {
            DeltaContext::Graph(g) => (1..=g.order() as Vertex).contains(&v),
            DeltaContext::Digraph(d) => d.contains(v),
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            DeltaContext::Graph(g) => g.vertices().collect(),
            DeltaContext::Digraph(d) => d.vertices().to_vec(),
        }
    }
}

/// δ(u, v): 1 if u < v or u → v is an edge/arc, else 0.
pub fn delta_pair<'a>(ctx: impl Into<DeltaContext<'a>>, u: Vertex, v: Vertex) -> Result<u8> {
    let ctx = ctx.into();
    for x in [u, v] {
        if !ctx.contains(x) {
            return Err(Error::UnknownVertex(x));
        }
    }
    if u == v {
        return Err(Error::PreconditionViolated(format!("δ needs two distinct vertices, got {u} twice")));
    }
    let joined = match ctx {
        DeltaContext::Graph(g) => g.has_edge(u, v),
        DeltaContext::Digraph(d) => d.has_arc(u, v),
    };
    Ok((u < v || joined) as u8)
}

/// δ(π): the sum of δ over adjacent pairs.
pub fn delta_ordering<'a>(ctx: impl Into<DeltaContext<'a>>, pi: &Ordering) -> Result<usize> {
    let ctx = ctx.into();
    let mut vs = ctx.vertices();
    vs.sort_unstable();
    let mut seq = pi.as_slice().to_vec();
    seq.sort_unstable();
    if vs != seq {
        return Err(Error::NotAnOrdering(format!("{pi} does not permute the vertex set")));
    }
    pi.as_slice().windows(2).map(|w| delta_pair(ctx, w[0], w[1]).map(usize::from)).sum()
}

/// Row masks of δ over vertex indices: bit j of `rows[i]` is δ(v_i, v_j).
/// Indices follow label order, so "v_i < v_j" is "i < j".
fn graph_delta_rows(g: &LabeledGraph) -> Vec<u64> {
    let n = g.order();
    (0..n)
        .map(|i| {
            let above = if i + 1 >= 64 { 0 } else { !0u64 << (i + 1) };
            let full = if n >= 64 { !0u64 } else { (1u64 << n) - 1 };
            (above & full) | g.mask(i as Vertex + 1)
        })
        .collect()
}

fn digraph_delta_rows(d: &AcyclicDigraph) -> Vec<u64> {
    let n = d.order();
    (0..n)
        .map(|i| {
            let above = if i + 1 >= 64 { 0 } else { !0u64 << (i + 1) };
            let full = if n >= 64 { !0u64 } else { (1u64 << n) - 1 };
            (above & full) | d.out_mask(i)
        })
        .collect()
}

#[inline]
fn dl(rows: &[u64], a: usize, b: usize) -> usize {
    (rows[a] >> b & 1) as usize
}

fn full_delta(rows: &[u64], seq: &[usize]) -> usize {
    seq.windows(2).map(|w| dl(rows, w[0], w[1])).sum()
}

/// δ contributed by the pairs touching position `p`.
#[inline]
fn local(rows: &[u64], seq: &[usize], p: usize) -> usize {
    let mut s = 0;
    if p > 0 {
        s += dl(rows, seq[p - 1], seq[p]);
    }
    if p + 1 < seq.len() {
        s += dl(rows, seq[p], seq[p + 1]);
    }
    s
}

/// Swaps positions i < j and updates `delta` from the touched pairs only.
#[inline]
fn swap_update(rows: &[u64], seq: &mut [usize], i: usize, j: usize, delta: &mut usize) {
    let before = if j == i + 1 {
        local(rows, seq, i) + local(rows, seq, j) - dl(rows, seq[i], seq[j])
    } else {
        local(rows, seq, i) + local(rows, seq, j)
    };
    seq.swap(i, j);
    let after = if j == i + 1 {
        local(rows, seq, i) + local(rows, seq, j) - dl(rows, seq[i], seq[j])
    } else {
        local(rows, seq, i) + local(rows, seq, j)
    };
    *delta = *delta + after - before;
}

/// Heap's algorithm over positions `1..` of `seq` (position 0 is fixed),
/// tallying δ into `hist`. With `validate`, every incremental value is
/// compared with a full recomputation.
fn heap_tally(rows: &[u64], mut seq: Vec<usize>, hist: &mut [u64], validate: bool) {
    let n = seq.len();
    let mut delta = full_delta(rows, &seq);
    hist[delta] += 1;
    if n <= 2 {
        return;
    }
    let k = n - 1; // number of permuted positions
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            let (a, b) = if i % 2 == 0 { (1, 1 + i) } else { (1 + c[i], 1 + i) };
            swap_update(rows, &mut seq, a.min(b), a.max(b), &mut delta);
            if validate {
                assert_eq!(delta, full_delta(rows, &seq), "incremental δ drifted at {seq:?}");
            }
            hist[delta] += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn graph_histogram_impl(g: &LabeledGraph, validate: bool) -> Vec<u64> {
    let n = g.order();
    if n == 0 {
        return vec![1];
    }
    let rows = graph_delta_rows(g);
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; n];
            let seq: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&v| v != first)).collect();
            heap_tally(&rows, seq, &mut hist, validate);
            hist
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// hist[i] = number of orderings of V(G) with δ_G = i.
pub fn graph_delta_histogram(g: &LabeledGraph) -> Vec<u64> {
    graph_histogram_impl(g, false)
}

/// Same as [`graph_delta_histogram`], recomputing δ from scratch at every
/// step to validate the incremental update.
pub fn graph_delta_histogram_checked(g: &LabeledGraph) -> Vec<u64> {
    graph_histogram_impl(g, true)
}

/// hist[i] = number of D-respecting orderings with δ_D = i.
pub fn digraph_delta_histogram(d: &AcyclicDigraph) -> Vec<u64> {
    let n = d.order();
    if n == 0 {
        return vec![1];
    }
    let rows = digraph_delta_rows(d);
    let ins: Vec<u64> = (0..n).map(|i| d.in_mask(i)).collect();
    fn rec(rows: &[u64], ins: &[u64], placed: u64, last: usize, delta: usize, depth: usize, hist: &mut [u64]) {
        if depth == rows.len() {
            hist[delta] += 1;
            return;
        }
        let n = rows.len();
        let free = !placed & if n >= 64 { !0 } else { (1u64 << n) - 1 };
        for j in mask_iter(free) {
            if ins[j] & !placed == 0 {
                rec(rows, ins, placed | 1 << j, j, delta + dl(rows, last, j), depth + 1, hist);
            }
        }
    }
    let sources: Vec<usize> = (0..n).filter(|&i| ins[i] == 0).collect();
    sources
        .into_par_iter()
        .map(|s| {
            let mut hist = vec![0u64; n];
            rec(&rows, &ins, 1 << s, s, 0, 1, &mut hist);
            hist
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Ψ(G, x) = Σ over all orderings of C(x + δ_G(π), n).
pub fn psi_graph(g: &LabeledGraph) -> BinomPoly {
    BinomPoly::from_counts(g.order(), &graph_delta_histogram(g))
}

/// Ψ(D, x) = Σ over OP(D) of C(x + δ_D(π), n).
pub fn psi_digraph(d: &AcyclicDigraph) -> BinomPoly {
    BinomPoly::from_counts(d.order(), &digraph_delta_histogram(d))
}

/// Δ(D, z) = Σ over OP(D) of z^{δ_D(π)}.
pub fn delta_poly(d: &AcyclicDigraph) -> ZPoly {
    ZPoly::from_histogram(&digraph_delta_histogram(d))
}

/// Ψ(D) from Δ(D): z^j ↦ C(x + j, n).
pub fn psi_from_delta(delta: &ZPoly, n: usize) -> BinomPoly {
    delta.to_binom(n).expect("Δ has nonnegative exponents")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> AcyclicDigraph {
        AcyclicDigraph::new(&[1, 2, 3], &[(1, 3)]).unwrap()
    }
    fn d2() -> AcyclicDigraph {
        AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap()
    }
    fn d3() -> AcyclicDigraph {
        AcyclicDigraph::new(&[1, 2, 3], &[(2, 1)]).unwrap()
    }
    fn ord(v: &[Vertex]) -> Ordering {
        Ordering::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pair_fixtures() {
        assert_eq!(delta_pair(&d2(), 3, 1).unwrap(), 1);
        assert_eq!(delta_pair(&d2(), 3, 2).unwrap(), 0);
        assert_eq!(delta_pair(&d2(), 1, 2).unwrap(), 1);
        assert!(matches!(delta_pair(&d2(), 1, 7), Err(Error::UnknownVertex(7))));
        let g = LabeledGraph::from_edges(3, &[(1, 3)]).unwrap();
        assert_eq!(delta_pair(&g, 3, 1).unwrap(), 1);
        assert_eq!(delta_pair(&g, 2, 1).unwrap(), 0);
    }

    #[test]
    fn ordering_fixtures() {
        assert_eq!(delta_ordering(&d1(), &ord(&[1, 2, 3])).unwrap(), 2);
        assert_eq!(delta_ordering(&d2(), &ord(&[3, 2, 1])).unwrap(), 0);
        assert_eq!(delta_ordering(&d3(), &ord(&[2, 1, 3])).unwrap(), 2);
        assert!(delta_ordering(&d3(), &ord(&[2, 1])).is_err());
    }

    #[test]
    fn psi_and_delta_fixtures() {
        assert_eq!(psi_digraph(&d1()), BinomPoly::from_ints(3, &[(2, 1), (1, 2)]));
        assert_eq!(psi_digraph(&d3()), psi_digraph(&d1()));
        assert_eq!(psi_digraph(&d2()), BinomPoly::from_ints(3, &[(2, 2), (0, 1)]));
        assert_eq!(psi_graph(&LabeledGraph::complete(2).unwrap()), BinomPoly::from_ints(2, &[(1, 2)]));
        assert_eq!(delta_poly(&d1()), ZPoly::from_ints(&[(2, 1), (1, 2)]));
        assert_eq!(delta_poly(&d2()), ZPoly::from_ints(&[(2, 2), (0, 1)]));
        let anti = AcyclicDigraph::edgeless(&[1, 2, 3]).unwrap();
        assert_eq!(delta_poly(&anti), ZPoly::from_ints(&[(2, 1), (1, 4), (0, 1)]));
        assert_eq!(psi_from_delta(&delta_poly(&d2()), 3), psi_digraph(&d2()));
    }

    #[test]
    fn heap_increments_match_recomputation() {
        for mask in 0u32..64 {
            let mut g = LabeledGraph::empty(4).unwrap();
            let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
            }
            let fast = graph_delta_histogram_checked(&g);
            // naive: through the digraph enumerator on the edgeless digraph is not δ_G,
            // so compare against a direct permutation walk
            let mut naive = vec![0u64; 4];
            AcyclicDigraph::edgeless(&[1, 2, 3, 4]).unwrap().for_each_linear_extension(|s| {
                naive[delta_ordering(&g, &Ordering::new(s.to_vec()).unwrap()).unwrap()] += 1;
            });
            assert_eq!(fast, naive);
            assert_eq!(fast.iter().sum::<u64>(), 24);
        }
    }

    #[test]
    fn digraph_histogram_matches_definition() {
        let d = AcyclicDigraph::new(&[2, 5, 7, 9], &[(9, 2), (5, 7), (9, 7)]).unwrap();
        let mut naive = vec![0u64; 4];
        for pi in d.linear_extensions() {
            naive[delta_ordering(&d, &pi).unwrap()] += 1;
        }
        assert_eq!(digraph_delta_histogram(&d), naive);
    }
}

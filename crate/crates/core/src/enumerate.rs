//! Exhaustive generators for the small-instance scans.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structures::{AcyclicDigraph, LabeledGraph, Vertex};

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (1..=n as Vertex).array_combinations().map(|[u, v]| (u, v)).collect()
}

/// All 2^C(n,2) labelled graphs on [n], ordered by edge bitmask.
pub fn graphs(n: usize) -> impl Iterator<Item = LabeledGraph> {
    let ps = pairs(n);
    assert!(ps.len() < 64, "too many vertex pairs");
    (0u64..1 << ps.len()).map(move |mask| {
        let edges: Vec<_> = ps.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        LabeledGraph::from_edges(n, &edges).expect("pairs are valid")
    })
}

/// All acyclic digraphs on exactly these labels: each pair carries no arc or
/// one of its two arcs, cyclic choices dropped.
pub fn digraphs_on(vertices: &[Vertex]) -> Vec<AcyclicDigraph> {
    let ps: Vec<(Vertex, Vertex)> = vertices.iter().copied().array_combinations().map(|[u, v]| (u, v)).collect();
    let total = 3usize.pow(ps.len() as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut arcs = Vec::new();
            for &(u, v) in &ps {
                match code % 3 {
                    1 => arcs.push((u, v)),
                    2 => arcs.push((v, u)),
                    _ => {}
                }
                code /= 3;
            }
            AcyclicDigraph::new(vertices, &arcs).ok()
        })
        .collect()
}

/// All acyclic digraphs with n vertices labelled from {1, ..., pool}.
pub fn digraphs(n: usize, pool: Vertex) -> Vec<AcyclicDigraph> {
    (1..=pool).combinations(n).flat_map(|vs| digraphs_on(&vs)).collect()
}

/// Decodes a Prüfer sequence over [n] (length n - 2) into a tree.
pub fn prufer_decode(seq: &[Vertex], n: usize) -> Result<LabeledGraph> {
    if n < 2 || seq.len() + 2 != n {
        return Err(Error::PreconditionViolated(format!("a Prüfer sequence for n = {n} has length n - 2")));
    }
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        if v == 0 || v as usize > n {
            return Err(Error::UnknownVertex(v));
        }
        degree[v as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (1..=n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf as Vertex, v));
        degree[leaf] = 0;
        degree[v as usize] -= 1;
    }
    let last: Vec<Vertex> = (1..=n).filter(|&u| degree[u] == 1).map(|u| u as Vertex).collect();
    edges.push((last[0], last[1]));
    LabeledGraph::from_edges(n, &edges)
}

/// All n^(n-2) labelled trees on [n].
pub fn labeled_trees(n: usize) -> Box<dyn Iterator<Item = LabeledGraph>> {
    match n {
        0 => Box::new(std::iter::empty()),
        1 => Box::new(std::iter::once(LabeledGraph::empty(1).expect("n = 1"))),
        2 => Box::new(std::iter::once(prufer_decode(&[], 2).expect("n = 2"))),
        _ => Box::new(
            (0..n - 2)
                .map(|_| 1..=n as Vertex)
                .multi_cartesian_product()
                .map(move |seq| prufer_decode(&seq, n).expect("valid sequence")),
        ),
    }
}

/// A canonical string for a tree up to isomorphism: the smaller AHU encoding
/// over its one or two centres.
pub fn tree_canonical_form(t: &LabeledGraph) -> Result<String> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.order();
    if n <= 1 {
        return Ok("()".repeat(n));
    }
    let nbrs: Vec<Vec<Vertex>> = t.vertices().map(|v| t.neighborhood(v).expect("vertex")).collect();
    let mut degree: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let mut layer: Vec<Vertex> = t.vertices().filter(|&v| degree[v as usize - 1] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &nbrs[leaf as usize - 1] {
                let d = &mut degree[w as usize - 1];
                if *d > 1 {
                    *d -= 1;
                    if *d == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    fn encode(v: Vertex, parent: Vertex, nbrs: &[Vec<Vertex>]) -> String {
        let mut kids: Vec<String> =
            nbrs[v as usize - 1].iter().filter(|&&w| w != parent).map(|&w| encode(w, v, nbrs)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    Ok(layer.iter().map(|&c| encode(c, 0, &nbrs)).min().expect("a centre exists"))
}

/// One labelled representative per isomorphism class of trees on [n], keyed
/// by canonical form.
pub fn unlabeled_trees(n: usize) -> BTreeMap<String, LabeledGraph> {
    let mut out = BTreeMap::new();
    for t in labeled_trees(n) {
        let key = tree_canonical_form(&t).expect("generated trees are trees");
        out.entry(key).or_insert(t);
    }
    out
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finding::Finding;
use crate::psi::graph_witnesses;
use crate::structures::{LabeledGraph, Vertex};

fn checked(g: &LabeledGraph, omega: Vec<Vertex>, check: &str) -> Result<Vec<Vertex>> {
    if !graph_witnesses(&g.relabel(&omega)?).is_empty() {
        return Err(Finding::new(check, format!("ω = {omega:?} leaves witnesses"), &g.into()).into());
    }
    Ok(omega)
}

/// Labels a caterpillar: with core path u_1 ... u_k carrying c_i leaves,
/// u_i gets c_1 + ... + c_i + i and its leaves fill the c_i labels just
/// below. Returns ω with ω(v) = omega[v - 1].
pub fn caterpillar_labeling(t: &LabeledGraph) -> Result<Vec<Vertex>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.order();
    if n <= 2 {
        return Ok((1..=n as Vertex).collect());
    }
    let degree = |v: Vertex| t.degree(v).expect("vertex");
    let core: Vec<Vertex> = t.vertices().filter(|&v| degree(v) >= 2).collect();
    let in_core = |v: Vertex| degree(v) >= 2;
    let core_nbrs =
        |v: Vertex| -> Vec<Vertex> { t.neighborhood(v).expect("vertex").into_iter().filter(|&w| in_core(w)).collect() };
    if core.iter().any(|&v| core_nbrs(v).len() > 2) {
        return Err(Error::NotCaterpillar);
    }
    // walk the core path from its smallest end
    let start = *core.iter().find(|&&v| core_nbrs(v).len() <= 1).expect("a path has an end");
    let mut path = vec![start];
    let mut prev = 0;
    while let Some(&next) = core_nbrs(*path.last().expect("nonempty")).iter().find(|&&w| w != prev) {
        prev = *path.last().expect("nonempty");
        path.push(next);
    }
    let mut omega = vec![0; n];
    let mut used = 0;
    for (i, &u) in path.iter().enumerate() {
        let leaves: Vec<Vertex> = t.neighborhood(u)?.into_iter().filter(|&w| !in_core(w)).collect();
        let lo = used + i as Vertex + 1;
        for (k, &leaf) in leaves.iter().enumerate() {
            omega[leaf as usize - 1] = lo + k as Vertex;
        }
        used += leaves.len() as Vertex;
        omega[u as usize - 1] = used + i as Vertex + 1;
    }
    checked(t, omega, "caterpillar-labeling")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// G - u is complete multipartite.
    OneVertex,
    /// {u, v} independent and dominating, G - {u, v} complete multipartite.
    Dominating,
    /// {u, v} independent with disjoint neighbourhoods, G - {u, v} complete multipartite.
    Disjoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub rule: Rule,
    pub u: Vertex,
    pub v: Option<Vertex>,
    pub omega: Vec<Vertex>,
}

/// Assigns consecutive labels from `next` to `vs` in increasing vertex order.
fn fill(omega: &mut [Vertex], vs: impl IntoIterator<Item = Vertex>, next: &mut Vertex) {
    for w in vs {
        omega[w as usize - 1] = *next;
        *next += 1;
    }
}

fn without(g: &LabeledGraph, drop: &[Vertex]) -> Result<LabeledGraph> {
    let keep: Vec<Vertex> = g.vertices().filter(|v| !drop.contains(v)).collect();
    g.induced_subgraph(&keep)
}

/// Detects the one-vertex and two-vertex multipartite hypotheses and builds
/// the labelling each one prescribes, checking W(G_ω) = ∅.
pub fn structured_membership(g: &LabeledGraph) -> Result<Construction> {
    let n = g.order();
    let nv = n as Vertex;
    for u in g.vertices() {
        if !without(g, &[u])?.is_complete_multipartite() {
            continue;
        }
        let nu = g.neighborhood(u)?;
        let mut omega = vec![0; n];
        omega[u as usize - 1] = 1;
        let mut next = 2;
        fill(&mut omega, nu.iter().copied(), &mut next);
        fill(&mut omega, g.vertices().filter(|&w| w != u && !nu.contains(&w)), &mut next);
        let omega = checked(g, omega, "structured-one-vertex")?;
        return Ok(Construction { rule: Rule::OneVertex, u, v: None, omega });
    }
    for u in g.vertices() {
        for v in u + 1..=nv {
            if g.has_edge(u, v) || !without(g, &[u, v])?.is_complete_multipartite() {
                continue;
            }
            let nu = g.neighborhood(u)?;
            let nvs = g.neighborhood(v)?;
            let only_u: Vec<Vertex> = nu.iter().copied().filter(|w| !nvs.contains(w)).collect();
            let both: Vec<Vertex> = nu.iter().copied().filter(|w| nvs.contains(w)).collect();
            let only_v: Vec<Vertex> = nvs.iter().copied().filter(|w| !nu.contains(w)).collect();
            let others: Vec<Vertex> =
                g.vertices().filter(|&w| w != u && w != v && !nu.contains(&w) && !nvs.contains(&w)).collect();
            let rule = if others.is_empty() {
                Rule::Dominating
            } else if both.is_empty() {
                Rule::Disjoint
            } else {
                continue;
            };
            // u ↦ 1 and v ↦ n; u's private neighbours, shared neighbours,
            // the rest, then v's private neighbours fill 2..n-1 in turn
            let mut omega = vec![0; n];
            omega[u as usize - 1] = 1;
            omega[v as usize - 1] = nv;
            let mut next = 2;
            fill(&mut omega, only_u, &mut next);
            fill(&mut omega, both, &mut next);
            fill(&mut omega, others, &mut next);
            fill(&mut omega, only_v, &mut next);
            let check = if rule == Rule::Dominating { "structured-dominating" } else { "structured-disjoint" };
            let omega = checked(g, omega, check)?;
            return Ok(Construction { rule, u, v: Some(v), omega });
        }
    }
    Err(Error::HypothesisNotMet("no vertex or independent pair leaves a complete multipartite graph".into()))
}

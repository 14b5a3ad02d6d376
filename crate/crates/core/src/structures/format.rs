//! Canonical text format, one object per file.
//!
//! ```text
//! # a graph: header line, then one edge per line
//! graph 3
//! 1 3
//!
//! # a digraph: optional vertex lines, then arcs
//! digraph
//! vertex 2
//! 3 -> 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Serialisation always lists
//! every vertex of a digraph so that isolated vertices survive a round trip.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{AcyclicDigraph, LabeledGraph, Vertex};

/// A parsed instance: either an undirected labelled graph or an acyclic digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Graph(LabeledGraph),
    Digraph(AcyclicDigraph),
}

impl Instance {
    pub fn to_text(&self) -> String {
        match self {
            Instance::Graph(g) => graph_to_text(g),
            Instance::Digraph(d) => digraph_to_text(d),
        }
    }
}

impl From<LabeledGraph> for Instance {
    fn from(g: LabeledGraph) -> Self {
        Instance::Graph(g)
    }
}

impl From<AcyclicDigraph> for Instance {
    fn from(d: AcyclicDigraph) -> Self {
        Instance::Digraph(d)
    }
}

impl From<&LabeledGraph> for Instance {
    fn from(g: &LabeledGraph) -> Self {
        Instance::Graph(g.clone())
    }
}

impl From<&AcyclicDigraph> for Instance {
    fn from(d: &AcyclicDigraph) -> Self {
        Instance::Digraph(d.clone())
    }
}

pub fn graph_to_text(g: &LabeledGraph) -> String {
    let mut s = format!("graph {}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn digraph_to_text(d: &AcyclicDigraph) -> String {
    let mut s = String::from("digraph\n");
    for v in d.vertices() {
        let _ = writeln!(s, "vertex {v}");
    }
    for (u, v) in d.arcs() {
        let _ = writeln!(s, "{u} -> {v}");
    }
    s
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn num(tok: &str, line: usize) -> Result<Vertex> {
    tok.parse::<Vertex>().map_err(|_| perr(line, format!("expected a non-negative integer, found {tok:?}")))
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| perr(0, "empty input"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        match head.as_slice() {
            ["graph", n] => {
                let n = num(n, hline)? as usize;
                let mut g = LabeledGraph::empty(n).map_err(|e| perr(hline, e.to_string()))?;
                for (ln, l) in lines {
                    let toks: Vec<&str> = l.split_whitespace().collect();
                    let [u, v] = toks.as_slice() else {
                        return Err(perr(ln, "expected an edge `u v`"));
                    };
                    g.add_edge(num(u, ln)?, num(v, ln)?).map_err(|e| perr(ln, e.to_string()))?;
                }
                Ok(Instance::Graph(g))
            }
            ["digraph"] => {
                let mut vertices = Vec::new();
                let mut arcs = Vec::new();
                for (ln, l) in lines {
                    let spaced = l.replace("->", " -> ");
                    let toks: Vec<&str> = spaced.split_whitespace().collect();
                    match toks.as_slice() {
                        ["vertex", v] => vertices.push(num(v, ln)?),
                        [u, "->", v] => arcs.push((num(u, ln)?, num(v, ln)?)),
                        _ => return Err(perr(ln, "expected `vertex v` or `u -> v`")),
                    }
                }
                let mut sorted = vertices.clone();
                sorted.sort_unstable();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::LabelCollision(w[0]));
                }
                AcyclicDigraph::from_arcs(&arcs, &vertices).map(Instance::Digraph)
            }
            _ => Err(perr(hline, "expected `graph <n>` or `digraph` header")),
        }
    }
}

pub fn parse(text: &str) -> Result<Instance> {
    text.parse()
}

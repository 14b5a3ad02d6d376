use rayon::prelude::*;
use serde::Serialize;

use super::gn_membership_with_limit;
use crate::enumerate::unlabeled_trees;
use crate::error::{Error, Result};
use crate::structures::LabeledGraph;

/// n ≤ 2, or deleting every leaf leaves a path.
pub fn core_is_path(t: &LabeledGraph) -> Result<bool> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.order() <= 2 {
        return Ok(true);
    }
    let inner: Vec<_> = t.vertices().filter(|&v| t.degree(v).expect("vertex") >= 2).collect();
    let core = t.induced_subgraph(&inner)?;
    Ok(core.vertices().all(|v| core.degree(v).expect("vertex") <= 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeScanRow {
    pub n: usize,
    /// Isomorphism classes of trees on n vertices.
    pub classes: usize,
    pub members: usize,
    pub caterpillars: usize,
    /// Canonical forms where membership and the core-is-a-path test disagree.
    pub disagreements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeScanReport {
    pub rows: Vec<TreeScanRow>,
}

impl TreeScanReport {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(|r| r.disagreements.is_empty())
    }
}

/// Compares 𝒢_n membership with the core-is-a-path predicate on every tree
/// with at most `max_n` vertices, one representative per isomorphism class.
/// Disagreements are reported, not raised.
pub fn tree_conjecture_scan(max_n: usize) -> Result<TreeScanReport> {
    if max_n > 9 {
        return Err(Error::LimitExceeded { what: "tree order".into(), value: max_n, limit: 9 });
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let trees: Vec<(String, LabeledGraph)> = unlabeled_trees(n).into_iter().collect();
        let verdicts: Vec<(bool, bool)> = trees
            .par_iter()
            .map(|(_, t)| Ok((gn_membership_with_limit(t, 9)?.omega.is_some(), core_is_path(t)?)))
            .collect::<Result<_>>()?;
        rows.push(TreeScanRow {
            n,
            classes: trees.len(),
            members: verdicts.iter().filter(|v| v.0).count(),
            caterpillars: verdicts.iter().filter(|v| v.1).count(),
            disagreements: trees
                .iter()
                .zip(&verdicts)
                .filter(|(_, (m, c))| m != c)
                .map(|((key, _), _)| key.clone())
                .collect(),
        });
    }
    Ok(TreeScanReport { rows })
}

use std::collections::BTreeSet;

use serde::Serialize;

use super::algorithm_a::algorithm_a;
use super::insertion::dl;
use crate::error::{Error, Result};
use crate::finding::Finding;
use crate::order_poly::stanley_descent_form;
use crate::poly::BinomPoly;
use crate::psi::{defect_in_lower_basis, digraph_witnesses, psi_digraph, reversed_arcs};
use crate::structures::{AcyclicDigraph, Instance, Vertex};

/// d_i with Ψ(D) - Ω(D̄) = Σ d_i C(x+i, n-2).
///
/// Besides nonnegativity and vanishing iff W(D) = ∅, the vector is checked
/// against Ψ(D) - Ψ(D_L) and, when D has no descending arc, must be zero.
pub fn theorem_defect(d: &AcyclicDigraph) -> Result<BinomPoly> {
    let n = d.order();
    if n < 3 {
        return Err(Error::PreconditionViolated(format!("defect needs n ≥ 3, got {n}")));
    }
    let inst = Instance::from(d);
    let psi = psi_digraph(d);
    let omega = stanley_descent_form(&d.poset())?.omega;
    let diff = &psi.to_monomial() - &omega.to_monomial();
    let defect = defect_in_lower_basis(&diff, n, "defect", &inst)?;

    let w = digraph_witnesses(d);
    if defect.is_zero() != w.is_empty() {
        return Err(Finding::new("defect-iff", format!("defect {defect} with |W(D)| = {}", w.len()), &inst).into());
    }
    if reversed_arcs(d).is_empty() && !defect.is_zero() {
        return Err(Finding::new("defect-no-descent", format!("Re(D) = ∅ yet defect is {defect}"), &inst).into());
    }
    let via_l = (&psi - &psi_digraph(&algorithm_a(d).apply(d))).collapse()?;
    if !via_l.same_polynomial(&defect) {
        return Err(Finding::new(
            "defect-via-l",
            format!("Ψ(D) - Ψ(D_L) collapses to {via_l}, defect is {defect}"),
            &inst,
        )
        .into());
    }
    Ok(defect)
}

/// The hypothesis under which the defect counts specific orderings through u.
pub fn interpretation_hypothesis(d: &AcyclicDigraph, u: Vertex) -> Result<bool> {
    let w = digraph_witnesses(d);
    if w.containing(u).len() != w.len() {
        return Ok(false);
    }
    if d.is_sink(u)? {
        return Ok(true);
    }
    let reach: BTreeSet<Vertex> = d.reachable_from(u)?.into_iter().collect();
    let lo = *reach.first().expect("u is not a sink");
    if d.vertices().iter().any(|v| !reach.contains(v) && *v >= lo) {
        return Ok(false);
    }
    for &y in &reach {
        if !d.is_sink(y)? && d.reachable_from(y)?.into_iter().min().is_some_and(|m| y >= m) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DInterpretation {
    /// Orderings counted by the two clauses, indexed by j = 0..n-3.
    pub counts: Vec<u64>,
    pub defect: Vec<u64>,
}

/// Counts π = (.., a_i, u, a_{i+1}, ..) ∈ OP(D) whose neighbours of u form a
/// witness with a_i > a_{i+1} > u (at δ = j + 2) or a_i > u > a_{i+1} (at
/// δ = j), and compares with the defect.
pub fn d_interpretation_check(d: &AcyclicDigraph, u: Vertex) -> Result<DInterpretation> {
    let n = d.order();
    if n < 3 {
        return Err(Error::HypothesisNotMet(format!("n = {n} < 3")));
    }
    if !interpretation_hypothesis(d, u)? {
        return Err(Error::HypothesisNotMet(format!("vertex {u}")));
    }
    let w = digraph_witnesses(d);
    let mut counts = vec![0u64; n - 2];
    d.for_each_linear_extension(|pi| {
        let k = pi.iter().position(|&v| v == u).expect("u occurs");
        if k == 0 || k + 1 == n {
            return;
        }
        let (x, y) = (pi[k - 1], pi[k + 1]);
        let mut t = [x, u, y];
        t.sort_unstable();
        if !w.contains(t) {
            return;
        }
        let delta: usize = pi.windows(2).map(|p| dl(d, p[0], p[1]) as usize).sum();
        let j = if x > y && y > u {
            delta.checked_sub(2)
        } else if x > u && u > y {
            Some(delta)
        } else {
            None
        };
        if let Some(j) = j.filter(|&j| j < n - 2) {
            counts[j] += 1;
        }
    });
    let full = theorem_defect(d)?;
    let defect: Vec<u64> = (0..n - 2)
        .map(|i| u64::try_from(full.coeff(i)).expect("defect coefficients are checked nonnegative"))
        .collect();
    let report = DInterpretation { counts, defect };
    if report.counts != report.defect {
        return Err(Finding::new(
            "defect-interpretation",
            format!("u = {u}: counted {:?}, defect {:?}", report.counts, report.defect),
            &Instance::from(d),
        )
        .into());
    }
    Ok(report)
}

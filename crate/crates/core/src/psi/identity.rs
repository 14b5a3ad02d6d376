use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{chromatic, graph_witnesses, psi_digraph, psi_graph, WitnessSet};
use crate::error::{Error, Result};
use crate::finding::Finding;
use crate::order_poly::stanley_descent_form;
use crate::poly::{BinomPoly, RatPoly};
use crate::structures::{AcyclicDigraph, Instance, LabeledGraph, Vertex};

/// (-1)^n χ(G, -x).
pub fn reflected_chromatic(g: &LabeledGraph) -> RatPoly {
    let p = chromatic(g).compose_neg();
    if g.order() % 2 == 1 {
        -&p
    } else {
        p
    }
}

/// AO(G), one digraph per acyclic orientation, ordered by the bitmask of
/// reversed edges.
pub fn acyclic_orientations(g: &LabeledGraph) -> Vec<AcyclicDigraph> {
    let edges = g.edges();
    let vs: Vec<Vertex> = g.vertices().collect();
    let m = edges.len();
    assert!(m < 64, "too many edges to enumerate orientations");
    (0u64..1 << m)
        .filter_map(|mask| {
            let arcs: Vec<_> =
                edges.iter().enumerate().map(|(k, &(u, v))| if mask >> k & 1 == 1 { (v, u) } else { (u, v) }).collect();
            AcyclicDigraph::new(&vs, &arcs).ok()
        })
        .collect()
}

/// |AO(G)|, checked against (-1)^n χ(G, -1).
pub fn acyclic_orientations_checked(g: &LabeledGraph) -> Result<Vec<AcyclicDigraph>> {
    let ao = acyclic_orientations(g);
    let expected = reflected_chromatic(g).eval_int(1);
    if BigRational::from_integer(BigInt::from(ao.len())) != expected {
        return Err(Finding::new(
            "acyclic-orientation-count",
            format!("{} orientations enumerated, (-1)^n χ(G,-1) = {expected}", ao.len()),
            &g.into(),
        )
        .into());
    }
    Ok(ao)
}

/// Ψ(G) against (-1)^n χ(G, -x), with the difference in the C(x+i, n-2) basis.
#[derive(Debug, Clone)]
pub struct GraphIdentityReport {
    /// Ψ(G, x) = (-1)^n χ(G, -x).
    pub holds: bool,
    pub psi: BinomPoly,
    pub reflected_chromatic: RatPoly,
    /// Coefficients d_i of Ψ - (-1)^n χ(-x) on C(x+i, n-2); absent for n < 3.
    pub defect: Option<BinomPoly>,
    pub witnesses: WitnessSet,
}

/// Expresses a difference in the degree-(n-2) basis and checks that its
/// coefficients are nonnegative and supported on shifts 0..=n-3.
pub(crate) fn defect_in_lower_basis(diff: &RatPoly, n: usize, check: &str, inst: &Instance) -> Result<BinomPoly> {
    let d = BinomPoly::from_monomial(diff, n - 2).map_err(|e| match e {
        Error::NotRepresentable { degree } => Error::from(Finding::new(
            check,
            format!("difference {diff} is not an integer combination of C(x+i,{degree})"),
            inst,
        )),
        other => other,
    })?;
    if !d.is_nonnegative() {
        return Err(Finding::new(check, format!("negative coefficient in defect {d}"), inst).into());
    }
    if d.max_shift().is_some_and(|s| s + 3 > n) {
        return Err(Finding::new(check, format!("defect {d} uses a shift above n-3"), inst).into());
    }
    Ok(d)
}

pub fn verify_graph_identity(g: &LabeledGraph) -> Result<GraphIdentityReport> {
    let n = g.order();
    let inst = Instance::from(g);
    let psi = psi_graph(g);
    let reflected = reflected_chromatic(g);
    let diff = &psi.to_monomial() - &reflected;
    let witnesses = graph_witnesses(g);
    let holds = diff.is_zero();
    let defect = if n >= 3 { Some(defect_in_lower_basis(&diff, n, "graph-identity", &inst)?) } else { None };
    if holds != witnesses.is_empty() {
        return Err(Finding::new(
            "graph-identity",
            format!("identity holds = {holds} but |W(G)| = {}", witnesses.len()),
            &inst,
        )
        .into());
    }
    Ok(GraphIdentityReport { holds, psi, reflected_chromatic: reflected, defect, witnesses })
}

/// Orderings of V(G) partitioned by acyclic orientation, and the sums over
/// AO(G) of Ψ(D), Ω(D̄) and Ω̄(D̄).
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub orientations: usize,
    /// |OP(D)| per orientation.
    pub extension_counts: Vec<u64>,
    /// Every ordering lies in exactly one OP(D).
    pub partition_exact: bool,
    /// Ψ(G) = Σ Ψ(D).
    pub psi_sum_holds: bool,
    /// (-1)^n χ(G, -x) = Σ Ω(D̄, x).
    pub order_sum_holds: bool,
    /// χ(G, x) = Σ Ω̄(D̄, x).
    pub strict_sum_holds: bool,
    /// |AO(G)| = (-1)^n χ(G, -1).
    pub count_holds: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.partition_exact && self.psi_sum_holds && self.order_sum_holds && self.strict_sum_holds && self.count_holds
    }
}

pub fn psi_decomposition_check(g: &LabeledGraph) -> Result<DecompositionReport> {
    let n = g.order();
    let ao = acyclic_orientations(g);
    let chi = chromatic(g);
    let reflected = reflected_chromatic(g);

    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut extension_counts = Vec::with_capacity(ao.len());
    let mut repeated = false;
    let mut psi_sum = BinomPoly::zero(n);
    let mut omega_sum = RatPoly::zero();
    let mut omega_bar_sum = RatPoly::zero();
    for d in &ao {
        let mut count = 0u64;
        d.for_each_linear_extension(|s| {
            count += 1;
            repeated |= !seen.insert(s.to_vec());
        });
        extension_counts.push(count);
        psi_sum = &psi_sum + &psi_digraph(d);
        let form = stanley_descent_form(&d.poset())?;
        omega_sum = &omega_sum + &form.omega.to_monomial();
        omega_bar_sum = &omega_bar_sum + &form.omega_bar.to_monomial();
    }
    let factorial: u64 = (1..=n as u64).product();
    Ok(DecompositionReport {
        orientations: ao.len(),
        partition_exact: !repeated && seen.len() as u64 == factorial,
        psi_sum_holds: psi_sum == psi_graph(g),
        order_sum_holds: omega_sum == reflected,
        strict_sum_holds: omega_bar_sum == chi,
        count_holds: BigRational::from_integer(BigInt::from(ao.len())) == reflected.eval_int(1),
        extension_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_counts() {
        assert_eq!(acyclic_orientations(&LabeledGraph::complete(2).unwrap()).len(), 2);
        assert_eq!(acyclic_orientations_checked(&LabeledGraph::complete(3).unwrap()).unwrap().len(), 6);
        assert_eq!(acyclic_orientations(&LabeledGraph::empty(3).unwrap()).len(), 1);
    }

    #[test]
    fn identity_fixtures() {
        let p3 = verify_graph_identity(&LabeledGraph::path(3).unwrap()).unwrap();
        assert!(p3.holds);
        assert!(p3.defect.unwrap().is_zero());
        // x (x + 1)^2
        assert_eq!(p3.psi.to_monomial(), RatPoly::from_ints(&[0, 1, 2, 1]));

        let wedge = verify_graph_identity(&LabeledGraph::from_edges(3, &[(1, 3)]).unwrap()).unwrap();
        assert!(!wedge.holds);
        assert_eq!(wedge.defect.unwrap(), BinomPoly::from_ints(1, &[(0, 1)]));
        assert_eq!(wedge.psi, BinomPoly::from_ints(3, &[(2, 3), (1, 2), (0, 1)]));
        assert_eq!(wedge.reflected_chromatic, RatPoly::from_ints(&[0, 0, 1, 1]));
        assert_eq!(wedge.witnesses.len(), 1);

        for n in 1..=4 {
            assert!(verify_graph_identity(&LabeledGraph::complete(n).unwrap()).unwrap().holds);
        }
    }

    #[test]
    fn decomposition_fixtures() {
        let k2 = psi_decomposition_check(&LabeledGraph::complete(2).unwrap()).unwrap();
        assert_eq!(k2.extension_counts, vec![1, 1]);
        assert!(k2.holds());
        let p3 = psi_decomposition_check(&LabeledGraph::path(3).unwrap()).unwrap();
        assert_eq!(p3.orientations, 4);
        assert_eq!(p3.extension_counts.iter().sum::<u64>(), 6);
        assert!(p3.holds());
        let k3 = psi_decomposition_check(&LabeledGraph::complete(3).unwrap()).unwrap();
        assert_eq!(k3.extension_counts, vec![1; 6]);
        assert!(k3.holds());
    }
}

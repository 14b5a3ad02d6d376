use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::finding::Finding;
use crate::poly::{BinomPoly, ZPoly};
use crate::psi::{delta_poly, digraph_witnesses, psi_digraph, reversed_arcs};
use crate::structures::{AcyclicDigraph, Instance, Ordering, Vertex};

/// Whether S is ideal in D: S = ∅, or S is closed under reachability, every
/// arc out of S ascends from its tail's smallest out-neighbour, and S sits at
/// least two above everything else.
pub fn ideal_set_check(d: &AcyclicDigraph, s: &BTreeSet<Vertex>) -> Result<bool> {
    for &y in s {
        d.index(y)?;
    }
    if s.is_empty() {
        return Ok(true);
    }
    for &y in s {
        if !d.reachable_from(y)?.iter().all(|v| s.contains(v)) {
            return Ok(false);
        }
        if d.out_neighbors(y)?.into_iter().min().is_some_and(|lo| y >= lo) {
            return Ok(false);
        }
    }
    let rest_max = d.vertices().iter().filter(|v| !s.contains(v)).max();
    let lo = *s.first().expect("nonempty") as u64;
    Ok(match rest_max {
        None => lo >= 2,
        Some(&m) => lo >= 2 + m as u64,
    })
}

/// u_i is a sink of D[{u_i, ..., u_n}] for every i.
pub fn is_sink_elimination(d: &AcyclicDigraph, alpha: &Ordering) -> bool {
    let seq = alpha.as_slice();
    if seq.len() != d.order() || !seq.iter().all(|&v| d.contains(v)) {
        return false;
    }
    let mut left: BTreeSet<Vertex> = seq.iter().copied().collect();
    if left.len() != seq.len() {
        return false;
    }
    for &u in seq {
        left.remove(&u);
        if d.out_neighbors(u).expect("checked").iter().any(|v| left.contains(v)) {
            return false;
        }
    }
    true
}

/// Every sink-elimination ordering of `d`, in lexicographic order.
pub fn sink_elimination_orderings(d: &AcyclicDigraph) -> Vec<Ordering> {
    // reversing a sink-elimination ordering gives a linear extension, and back
    d.linear_extensions()
        .into_iter()
        .map(|pi| {
            let mut v = pi.as_slice().to_vec();
            v.reverse();
            Ordering::from_vec_unchecked(v)
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Evidence that D1 ⪰ D2 for D2 obtained by relabelling along `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SucceqEvidence {
    /// P(z) with Δ(D1) - Δ(D2) = (z-1)^2 P(z).
    pub quotient: ZPoly,
    pub witnesses_before: usize,
    pub witnesses_after: usize,
    /// P = 0 implies |W(D1)| = |W(D2)|; not guaranteed, see `TurningReport`.
    pub converse_holds: bool,
}

/// Checks conditions (a) and (b) of the ⪰ relation between `d1` and `d2`,
/// where `d2` is `d1` relabelled by `mu` on the moved vertices.
pub fn succeq_evidence(
    d1: &AcyclicDigraph,
    d2: &AcyclicDigraph,
    mu: &BTreeMap<Vertex, Vertex>,
) -> Result<SucceqEvidence> {
    let inst = Instance::from(d1);
    let image = |v: Vertex| mu.get(&v).copied().unwrap_or(v);
    let w1 = digraph_witnesses(d1);
    let w2 = digraph_witnesses(d2);
    let vs = d1.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                let t = [vs[i], vs[j], vs[k]];
                if w1.contains(t) {
                    continue;
                }
                let mut t2 = t.map(image);
                t2.sort_unstable();
                if w2.contains(t2) {
                    return Err(Finding::new(
                        "succeq-witness",
                        format!("{t:?} is not a witness but its image {t2:?} is"),
                        &inst,
                    )
                    .into());
                }
            }
        }
    }
    let diff = &delta_poly(d1) - &delta_poly(d2);
    let quotient = diff.div_z_minus_1_squared().map_err(|_| {
        Error::from(Finding::new("succeq-divisibility", format!("(z-1)^2 does not divide {diff}"), &inst))
    })?;
    let n = d1.order() as i32;
    if !quotient.is_nonnegative() || quotient.min_exponent().is_some_and(|e| e < 0) {
        return Err(
            Finding::new("succeq-negative", format!("quotient {quotient} has a negative coefficient"), &inst).into()
        );
    }
    if quotient.max_exponent().is_some_and(|e| e > n - 3) {
        return Err(Finding::new("succeq-degree", format!("quotient {quotient} has degree above n-3"), &inst).into());
    }
    if w1.len() == w2.len() && !quotient.is_zero() {
        return Err(Finding::new(
            "succeq-iff",
            format!("|W| stays {} yet the quotient is {quotient}", w1.len()),
            &inst,
        )
        .into());
    }
    Ok(SucceqEvidence {
        converse_holds: !quotient.is_zero() || w1.len() == w2.len(),
        quotient,
        witnesses_before: w1.len(),
        witnesses_after: w2.len(),
    })
}

/// Γ_{D,α} with the ⪰ evidence for every step and for the two endpoints.
#[derive(Debug, Clone)]
pub struct GammaSequence {
    /// D_0 = D, ..., D_{n-1}.
    pub digraphs: Vec<AcyclicDigraph>,
    pub steps: Vec<SucceqEvidence>,
    pub endpoint: SucceqEvidence,
    /// Ψ(D_0) - Ψ(D_{n-1}) on C(x+i, n-2); absent for n < 3.
    pub endpoint_defect: Option<BinomPoly>,
}

pub fn sink_elimination_sequence(d: &AcyclicDigraph, alpha: &Ordering) -> Result<GammaSequence> {
    if !is_sink_elimination(d, alpha) {
        return Err(Error::NotSinkElimination(alpha.to_string()));
    }
    let n = d.order();
    let inst = Instance::from(d);
    let big_m = n as Vertex + 1 + d.max_label().unwrap_or(0);
    let mut digraphs = vec![d.clone()];
    let mut steps = Vec::new();
    let mut total: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut ideal: BTreeSet<Vertex> = BTreeSet::new();
    for (i, &u) in alpha.as_slice().iter().enumerate().take(n.saturating_sub(1)) {
        let target = big_m - (i as Vertex + 1);
        let prev = digraphs.last().expect("nonempty");
        let next = prev.relabel_vertex(u, target)?;
        steps.push(succeq_evidence(prev, &next, &BTreeMap::from([(u, target)]))?);
        ideal.insert(target);
        if !ideal_set_check(&next, &ideal)? {
            return Err(Finding::new(
                "gamma-ideal",
                format!("after moving {u} to {target}, {ideal:?} is not ideal"),
                &inst,
            )
            .into());
        }
        total.insert(u, target);
        digraphs.push(next);
    }
    let last = digraphs.last().expect("nonempty");
    if !reversed_arcs(last).is_empty() {
        return Err(Finding::new("gamma-final", format!("D_(n-1) = {last:?} still has a descending arc"), &inst).into());
    }
    let endpoint = succeq_evidence(d, last, &total)?;
    let endpoint_defect = if n >= 3 { Some((&psi_digraph(d) - &psi_digraph(last)).collapse()?) } else { None };
    Ok(GammaSequence { digraphs, steps, endpoint, endpoint_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relabel::algorithm_a;

    fn ord(v: &[Vertex]) -> Ordering {
        Ordering::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ideal_fixtures() {
        let d2 = AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap();
        assert!(ideal_set_check(&d2, &BTreeSet::new()).unwrap());
        assert!(!ideal_set_check(&d2, &BTreeSet::from([1, 2, 3])).unwrap());
        let shifted = AcyclicDigraph::new(&[2, 3], &[(2, 3)]).unwrap();
        assert!(ideal_set_check(&shifted, &BTreeSet::from([2, 3])).unwrap());
        let step = d2.relabel_vertex(2, 6).unwrap();
        assert!(ideal_set_check(&step, &BTreeSet::from([6])).unwrap());
        // 3 reaches 1 ∉ S
        assert!(!ideal_set_check(&AcyclicDigraph::new(&[1, 3, 9], &[(9, 1)]).unwrap(), &BTreeSet::from([9])).unwrap());
    }

    #[test]
    fn gamma_fixtures() {
        let d2 = AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap();
        assert!(is_sink_elimination(&d2, &ord(&[2, 1, 3])));
        assert!(!is_sink_elimination(&d2, &ord(&[3, 1, 2])));
        assert!(matches!(sink_elimination_sequence(&d2, &ord(&[3, 1, 2])), Err(Error::NotSinkElimination(_))));
        let g = sink_elimination_sequence(&d2, &ord(&[2, 1, 3])).unwrap();
        assert_eq!(g.digraphs.len(), 3);
        assert_eq!(g.digraphs[1].vertices(), &[1, 3, 6]);
        assert_eq!(g.digraphs[2].arcs(), vec![(3, 5)]);
        assert_eq!(g.steps[0].quotient, ZPoly::one());
        assert!(g.steps[1].quotient.is_zero());
        assert_eq!(g.endpoint_defect.unwrap(), BinomPoly::from_ints(1, &[(0, 1)]));

        let flat = AcyclicDigraph::edgeless(&[1, 2, 3]).unwrap();
        let g = sink_elimination_sequence(&flat, &ord(&[1, 2, 3])).unwrap();
        assert!(g.steps.iter().all(|s| s.quotient.is_zero()));

        let l = algorithm_a(&d2);
        let alpha = Ordering::new(l.elimination_order()).unwrap();
        let g = sink_elimination_sequence(&d2, &alpha).unwrap();
        assert_eq!(g.digraphs.last().unwrap().normalized(), l.apply(&d2));
    }

    #[test]
    fn orderings_enumerated() {
        let d2 = AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap();
        let all = sink_elimination_orderings(&d2);
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|a| is_sink_elimination(&d2, a)));
    }
}

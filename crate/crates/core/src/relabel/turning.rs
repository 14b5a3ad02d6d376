use std::collections::BTreeSet;

use serde::Serialize;

use super::insertion::dl;
use crate::error::{Error, Result};
use crate::finding::Finding;
use crate::poly::{BinomPoly, ZPoly};
use crate::psi::{delta_poly, digraph_witnesses, psi_digraph};
use crate::structures::{AcyclicDigraph, Instance, Vertex};

/// P_D(u) = B_D[u] ∪ {c : some arc (c, b) with b < c}.
pub fn p_set(d: &AcyclicDigraph, u: Vertex) -> Result<BTreeSet<Vertex>> {
    let mut p: BTreeSet<Vertex> = d.in_neighbors(u)?.into_iter().collect();
    p.insert(u);
    p.extend(d.reversed_arcs().into_iter().map(|(c, _)| c));
    Ok(p)
}

pub fn turning_vertex(d: &AcyclicDigraph, u: Vertex) -> Result<bool> {
    let p = p_set(d, u)?;
    let f = d.out_neighbors(u)?;
    Ok(match f.iter().min() {
        None => true,
        Some(&lo) => lo as u64 >= 2 + *p.last().expect("u ∈ P_D(u)") as u64,
    })
}

/// A relabelling target for a turning vertex, possibly after doubling every
/// label to open up room in the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissible {
    /// `d`, or its image under v ↦ 2v.
    pub digraph: AcyclicDigraph,
    /// The turning vertex in `digraph`'s labels.
    pub a: Vertex,
    pub r: Vertex,
    pub stretched: bool,
}

fn window_pick(d: &AcyclicDigraph, a: Vertex) -> Result<Option<Vertex>> {
    let hi = *p_set(d, a)?.last().expect("a ∈ P_D(a)");
    match d.out_neighbors(a)?.into_iter().min() {
        None => Ok(Some(d.max_label().expect("a ∈ V") + 1)),
        Some(lo) => Ok((hi + 1..lo).rev().find(|r| !d.contains(*r))),
    }
}

fn stretch(d: &AcyclicDigraph) -> Result<AcyclicDigraph> {
    d.map_labels(|v| 2 * v)
}

/// The largest r ∉ V with max P_D(a) < r < min F_D(a) (or max V + 1 when a
/// is a sink). If every integer of the window is taken, labels are doubled.
pub fn admissible_r(d: &AcyclicDigraph, a: Vertex) -> Result<Admissible> {
    if !turning_vertex(d, a)? {
        return Err(Error::NotTurning(a));
    }
    if let Some(r) = window_pick(d, a)? {
        return Ok(Admissible { digraph: d.clone(), a, r, stretched: false });
    }
    let wide = stretch(d)?;
    if delta_poly(&wide) != delta_poly(d) {
        return Err(Finding::new("stretch-invariance", "doubling labels changed Δ", &Instance::from(d)).into());
    }
    let r = window_pick(&wide, 2 * a)?.expect("doubled window always holds an odd integer");
    Ok(Admissible { digraph: wide, a: 2 * a, r, stretched: true })
}

/// c_j(D, a) and c′_j(D, a) for j = 0..n-1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CStats {
    pub c: Vec<u64>,
    pub c_prime: Vec<u64>,
}

impl CStats {
    /// The coefficients c_{j+2} + c′_j, j = 0..n-3.
    pub fn combined(&self) -> Vec<u64> {
        let n = self.c.len();
        (0..n.saturating_sub(2)).map(|j| self.c[j + 2] + self.c_prime[j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().chain(&self.c_prime).all(|&x| x == 0)
    }
}

/// Counts, over π ∈ OP(D) with a strictly inside, those whose neighbours
/// x, y of a form a witness with a: arc (x, a) for c, arc (x, y) for c′.
pub fn c_stats(d: &AcyclicDigraph, a: Vertex) -> Result<CStats> {
    d.index(a)?;
    let n = d.order();
    let w = digraph_witnesses(d);
    let mut stats = CStats { c: vec![0; n], c_prime: vec![0; n] };
    d.for_each_linear_extension(|pi| {
        let k = pi.iter().position(|&v| v == a).expect("a occurs");
        if k == 0 || k + 1 == n {
            return;
        }
        let (x, y) = (pi[k - 1], pi[k + 1]);
        let mut triple = [a, x, y];
        triple.sort_unstable();
        if !w.contains(triple) {
            return;
        }
        let delta: usize = pi.windows(2).map(|p| dl(d, p[0], p[1]) as usize).sum();
        if d.has_arc(x, a) {
            stats.c[delta] += 1;
        }
        if d.has_arc(x, y) {
            stats.c_prime[delta] += 1;
        }
    });
    let inst = Instance::from(d);
    if stats.c.iter().take(2).any(|&x| x > 0) {
        return Err(Finding::new("c-stats-low", format!("a = {a}: c_0 or c_1 is nonzero"), &inst).into());
    }
    if stats.c_prime.iter().skip(n.saturating_sub(2)).any(|&x| x > 0) {
        return Err(Finding::new("c-stats-high", format!("a = {a}: c′_j nonzero for j ≥ n-2"), &inst).into());
    }
    Ok(stats)
}

#[derive(Debug, Clone)]
pub struct TurningReport {
    pub admissible: Admissible,
    /// Δ(D) - Δ(D_{a→r}).
    pub delta_diff: ZPoly,
    pub stats: CStats,
    /// Ψ(D) - Ψ(D_{a→r}) on C(x+j, n-2); absent for n < 3.
    pub psi_diff: Option<BinomPoly>,
    pub witnesses_through_a: usize,
    /// Δ(D) = Δ(D_{a→r}) implies W(D, a) = ∅. This can fail: a witness
    /// {a, b, c} whose c reaches a through another vertex never puts c, a, b
    /// next to each other, so it contributes nothing to the c-statistics.
    pub converse_holds: bool,
}

/// Δ(D) - Δ(D_{a→r}) for a turning vertex, checked against the c-statistics,
/// the Ψ difference, W(D_{a→r}) = W(D - a), and vanishing when W(D, a) = ∅.
pub fn delta_diff_turning(d: &AcyclicDigraph, a: Vertex) -> Result<TurningReport> {
    let adm = admissible_r(d, a)?;
    let (d, a, r) = (&adm.digraph, adm.a, adm.r);
    let n = d.order();
    let inst = Instance::from(d);
    let fail = |check: &str, detail: String| -> Error {
        Finding::new(check, format!("a = {a}, r = {r}: {detail}"), &inst).into()
    };

    let dr = d.relabel_vertex(a, r)?;
    let delta_diff = &delta_poly(d) - &delta_poly(&dr);
    let stats = c_stats(d, a)?;
    let quotient = ZPoly::from_histogram(&stats.combined());
    let formula = quotient.mul_z_minus_1_squared();
    if formula != delta_diff {
        return Err(fail("turning-delta", format!("Δ difference {delta_diff}, c-statistics give {formula}")));
    }

    let psi_diff = if n >= 3 {
        let direct = &psi_digraph(d) - &psi_digraph(&dr);
        let expected = BinomPoly::from_counts(n - 2, &stats.combined());
        let collapsed = direct.collapse()?;
        if !collapsed.same_polynomial(&expected) {
            return Err(fail("turning-psi", format!("Ψ difference collapses to {collapsed}, expected {expected}")));
        }
        Some(collapsed)
    } else {
        None
    };

    let after = digraph_witnesses(&dr);
    let without = digraph_witnesses(&d.delete_vertex(a)?);
    if after.triples != without.triples {
        return Err(fail("turning-witnesses", format!("|W(D_(a→r))| = {}, |W(D-a)| = {}", after.len(), without.len())));
    }

    let through = digraph_witnesses(d).containing(a).len();
    if through == 0 && !delta_diff.is_zero() {
        return Err(fail("turning-iff", format!("W(D,a) = ∅ yet Δ difference is {delta_diff}")));
    }
    Ok(TurningReport {
        admissible: adm.clone(),
        converse_holds: !delta_diff.is_zero() || through == 0,
        delta_diff,
        stats,
        psi_diff,
        witnesses_through_a: through,
    })
}

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::finding::Finding;
use crate::poly::{interpolate, RatPoly};
use crate::structures::{mask_iter, LabeledGraph};

fn drop_bit(mask: u64, v: usize) -> u64 {
    let low = mask & ((1u64 << v) - 1);
    let high = if v + 1 >= 64 { 0 } else { (mask >> (v + 1)) << v };
    low | high
}

fn add_into(acc: &mut Vec<i128>, p: &[i128], sign: i128) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += sign * b;
    }
}

/// Deletion–contraction over adjacency masks; coefficients by ascending power.
fn dc(adj: &[u64]) -> Vec<i128> {
    let k = adj.len();
    let Some(u) = (0..k).filter(|&i| adj[i] != 0).max_by_key(|&i| adj[i].count_ones()) else {
        let mut p = vec![0; k + 1];
        p[k] = 1;
        return p;
    };
    if (0..k).all(|i| adj[i].count_ones() as usize == k - 1) {
        // complete graph: x (x - 1) ... (x - k + 1)
        let mut p = vec![1i128];
        for j in 0..k as i128 {
            let mut next = vec![0i128; p.len() + 1];
            for (e, &c) in p.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= j * c;
            }
            p = next;
        }
        return p;
    }
    let v = adj[u].trailing_zeros() as usize;

    let mut deleted = adj.to_vec();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);

    let mut merged = adj.to_vec();
    merged[u] = (merged[u] | merged[v]) & !(1 << u) & !(1 << v);
    for w in mask_iter(adj[v]) {
        if w != u {
            merged[w] |= 1 << u;
        }
    }
    merged.remove(v);
    let contracted: Vec<u64> = merged.into_iter().map(|m| drop_bit(m, v)).collect();

    let mut out = dc(&deleted);
    add_into(&mut out, &dc(&contracted), -1);
    out
}

/// χ(G, x) by deletion–contraction.
pub fn chromatic(g: &LabeledGraph) -> RatPoly {
    let adj: Vec<u64> = g.vertices().map(|v| g.mask(v)).collect();
    let coeffs = dc(&adj);
    let mut p = RatPoly::zero();
    for (e, c) in coeffs.into_iter().enumerate() {
        p = &p + &RatPoly::monomial(e, BigRational::from_integer(BigInt::from(c)));
    }
    p
}

/// Number of proper colourings with colours 1..=k, by backtracking.
pub fn count_colorings(g: &LabeledGraph, k: u64) -> BigInt {
    let n = g.order();
    let adj: Vec<u64> = g.vertices().map(|v| g.mask(v)).collect();
    fn rec(adj: &[u64], colour: &mut Vec<u64>, k: u64) -> u128 {
        let i = colour.len();
        if i == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 1..=k {
            if mask_iter(adj[i] & ((1u64 << i) - 1)).all(|j| colour[j] != c) {
                colour.push(c);
                total += rec(adj, colour, k);
                colour.pop();
            }
        }
        total
    }
    let mut colour = Vec::with_capacity(n);
    BigInt::from(rec(&adj, &mut colour, k))
}

/// χ(G, x), cross-checked against interpolated colouring counts at k = 0..n.
pub fn chromatic_checked(g: &LabeledGraph) -> Result<RatPoly> {
    let dc = chromatic(g);
    let n = g.order();
    let points: Vec<(i64, BigInt)> = (0..=n as u64).map(|k| (k as i64, count_colorings(g, k))).collect();
    let counted = interpolate(&points, n)?;
    if counted != dc {
        return Err(Finding::new(
            "chromatic-cross-check",
            format!("deletion-contraction gives {dc}, colouring counts give {counted}"),
            &g.into(),
        )
        .into());
    }
    Ok(dc)
}

//! Order polynomial Ω and strict order polynomial Ω̄ of a finite poset, by
//! brute-force counting plus interpolation and by the descent statistic.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{interpolate, BinomPoly, RatPoly};
use crate::structures::{Poset, Vertex};

/// Elements in a topological order, each with the bitmask (over positions in
/// that order) of its strict predecessors.
fn layered(p: &Poset) -> Vec<u64> {
    let d = p.strict_digraph();
    let order = d.least_linear_extension();
    let pos: Vec<usize> = d.vertices().iter().map(|&v| order.position(v).expect("all vertices")).collect();
    order
        .as_slice()
        .iter()
        .map(|&v| {
            let i = d.index(v).expect("vertex");
            crate::structures::mask_iter(d.in_mask(i)).fold(0u64, |m, j| m | 1 << pos[j])
        })
        .collect()
}

fn count_maps(preds: &[u64], m: u64, strict: bool) -> BigInt {
    let n = preds.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if m == 0 {
        return BigInt::zero();
    }
    fn rec(preds: &[u64], sigma: &mut Vec<u64>, m: u64, strict: bool) -> u128 {
        let k = sigma.len();
        if k == preds.len() {
            return 1;
        }
        let lo = crate::structures::mask_iter(preds[k]).map(|j| sigma[j] + strict as u64).max().unwrap_or(1);
        let mut total = 0;
        for v in lo..=m {
            sigma.push(v);
            total += rec(preds, sigma, m, strict);
            sigma.pop();
        }
        total
    }
    // the first element in topological order has no predecessors
    let total: u128 = (1..=m)
        .into_par_iter()
        .map(|v| {
            let mut sigma = vec![v];
            rec(preds, &mut sigma, m, strict)
        })
        .sum();
    BigInt::from(total)
}

/// Number of maps σ: P → [m] with u ⪯ v ⟹ σ(u) ≤ σ(v).
pub fn omega_bruteforce(p: &Poset, m: u64) -> BigInt {
    count_maps(&layered(p), m, false)
}

/// Number of maps σ: P → [m] with u ≺ v ⟹ σ(u) < σ(v).
pub fn strict_omega_bruteforce(p: &Poset, m: u64) -> BigInt {
    count_maps(&layered(p), m, true)
}

fn interpolated(p: &Poset, strict: bool) -> Result<RatPoly> {
    let n = p.size();
    let preds = layered(p);
    // n + 1 nodes fix the fit; two more catch a wrong degree bound
    let points: Vec<(i64, BigInt)> = (1..=n as u64 + 3).map(|m| (m as i64, count_maps(&preds, m, strict))).collect();
    let poly = interpolate(&points, n)?;
    if poly.degree() != Some(n) {
        return Err(Error::InconsistentData { bound: n, at: "leading coefficient".into() });
    }
    Ok(poly)
}

/// Ω(P, x), interpolated from brute-force counts.
pub fn order_polynomial(p: &Poset) -> Result<RatPoly> {
    interpolated(p, false)
}

/// Ω̄(P, x), interpolated from brute-force counts.
pub fn strict_order_polynomial(p: &Poset) -> Result<RatPoly> {
    interpolated(p, true)
}

/// Descent and ascent tallies of P-respecting orderings under a fixed
/// order-preserving bijection ω: P → [n].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentProfile {
    /// (element, ω(element)), by element.
    pub omega: Vec<(Vertex, usize)>,
    /// w[s] = number of orderings with s descents.
    pub w: Vec<u64>,
    /// wbar[s] = number of orderings with s ascents.
    pub wbar: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyForm {
    pub profile: DescentProfile,
    pub omega: BinomPoly,
    pub omega_bar: BinomPoly,
}

/// Ω and Ω̄ from the descent statistic.
///
/// ω ranks the lexicographically least linear extension. With s descents an
/// ordering contributes C(m + n - 1 - s, n) to Ω; with s ascents it
/// contributes the same to Ω̄. The ascent form Σ_π C(m + ascents(π), n) of Ω is
/// tallied separately and compared.
pub fn stanley_descent_form(p: &Poset) -> Result<StanleyForm> {
    let n = p.size();
    let d = p.strict_digraph();
    let least = d.least_linear_extension();
    let rank = |v: Vertex| least.position(v).expect("element") + 1;
    let omega: Vec<(Vertex, usize)> = p.elements().iter().map(|&v| (v, rank(v))).collect();
    if n == 0 {
        let one = BinomPoly::from_counts(0, &[1]);
        let profile = DescentProfile { omega, w: vec![], wbar: vec![] };
        return Ok(StanleyForm { profile, omega: one.clone(), omega_bar: one });
    }

    let mut w = vec![0u64; n];
    let mut wbar = vec![0u64; n];
    let mut ascent_hist = vec![0u64; n];
    d.for_each_linear_extension(|seq| {
        let ranks: Vec<usize> = seq.iter().map(|&v| rank(v)).collect();
        let asc = ranks.windows(2).filter(|x| x[0] < x[1]).count();
        let desc = ranks.windows(2).filter(|x| x[0] > x[1]).count();
        w[desc] += 1;
        wbar[asc] += 1;
        ascent_hist[asc] += 1;
    });

    let shift_of = |s: usize| n - 1 - s;
    let omega_poly = BinomPoly::new(n, w.iter().enumerate().map(|(s, &c)| (shift_of(s), BigInt::from(c))));
    let omega_bar = BinomPoly::new(n, wbar.iter().enumerate().map(|(s, &c)| (shift_of(s), BigInt::from(c))));
    let ascent_form = BinomPoly::from_counts(n, &ascent_hist);
    if ascent_form != omega_poly {
        return Err(Error::InconsistentData { bound: n, at: "ascent form of the order polynomial".into() });
    }
    Ok(StanleyForm { profile: DescentProfile { omega, w, wbar }, omega: omega_poly, omega_bar })
}

/// Comparison artifacts for Ω̄(m) = (-1)^n Ω(-m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub holds: bool,
    pub omega: RatPoly,
    pub omega_bar: RatPoly,
    /// Points m where the two sides disagree.
    pub mismatches: Vec<i64>,
}

pub fn reciprocity_check(p: &Poset) -> Result<ReciprocityReport> {
    let n = p.size();
    let omega = order_polynomial(p)?;
    let omega_bar = strict_order_polynomial(p)?;
    let mut reflected = omega.compose_neg();
    if n % 2 == 1 {
        reflected = -&reflected;
    }
    let mismatches: Vec<i64> = (1..=n as i64 + 2).filter(|&m| omega_bar.eval_int(m) != reflected.eval_int(m)).collect();
    let holds = mismatches.is_empty() && reflected == omega_bar;
    Ok(ReciprocityReport { holds, omega, omega_bar, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::AcyclicDigraph;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn brute_force_fixtures() {
        assert_eq!(omega_bruteforce(&Poset::antichain(3), 2), big(8));
        assert_eq!(omega_bruteforce(&Poset::chain(3), 2), big(4));
        assert_eq!(strict_omega_bruteforce(&Poset::chain(3), 2), big(0));
        assert_eq!(strict_omega_bruteforce(&Poset::chain(3), 3), big(1));
    }

    #[test]
    fn interpolation_fixtures() {
        assert_eq!(order_polynomial(&Poset::antichain(3)).unwrap(), RatPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(order_polynomial(&Poset::chain(3)).unwrap(), BinomPoly::from_ints(3, &[(2, 1)]).to_monomial());
        // closure of the single arc 1 -> 3 on {1,2,3}
        let d1 = AcyclicDigraph::new(&[1, 2, 3], &[(1, 3)]).unwrap();
        assert_eq!(order_polynomial(&d1.poset()).unwrap(), BinomPoly::from_ints(3, &[(2, 1), (1, 2)]).to_monomial());
    }

    #[test]
    fn descent_fixtures() {
        let anti = stanley_descent_form(&Poset::antichain(3)).unwrap();
        assert_eq!(anti.profile.w, vec![1, 4, 1]);
        assert_eq!(anti.omega.to_monomial(), RatPoly::from_ints(&[0, 0, 0, 1]));

        let chain = stanley_descent_form(&Poset::chain(3)).unwrap();
        assert_eq!(chain.profile.w, vec![1, 0, 0]);
        assert_eq!(chain.omega, BinomPoly::from_ints(3, &[(2, 1)]));
        assert_eq!(chain.omega_bar, BinomPoly::from_ints(3, &[(0, 1)]));

        let d2 = AcyclicDigraph::new(&[1, 2, 3], &[(3, 1)]).unwrap();
        let form = stanley_descent_form(&d2.poset()).unwrap();
        // lexicographically least extension is (2,3,1)
        assert_eq!(form.profile.omega, vec![(1, 3), (2, 1), (3, 2)]);
        assert_eq!(form.omega, BinomPoly::from_ints(3, &[(2, 1), (1, 2)]));
        let w: u64 = form.profile.w.iter().sum();
        assert_eq!(w, 3);
    }

    #[test]
    fn reciprocity_fixtures() {
        for p in [Poset::chain(3), Poset::chain(1), Poset::antichain(3)] {
            let r = reciprocity_check(&p).unwrap();
            assert!(r.holds, "{p:?}");
        }
        let r = reciprocity_check(&Poset::chain(3)).unwrap();
        assert_eq!(r.omega_bar, BinomPoly::from_ints(3, &[(0, 1)]).to_monomial());
    }

    #[test]
    fn empty_poset_counts_one_map() {
        let p = Poset::antichain(0);
        assert_eq!(omega_bruteforce(&p, 3), big(1));
        assert_eq!(stanley_descent_form(&p).unwrap().omega.eval_int(5), big(1));
    }
}

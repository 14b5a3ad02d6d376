use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::RatPoly;
use crate::error::{Error, Result};

/// The unique polynomial of degree ≤ `bound` through the given points.
///
/// The first `bound + 1` distinct abscissae fix the fit (Newton divided
/// differences); every remaining point is checked against it exactly.
pub fn interpolate(points: &[(i64, BigInt)], bound: usize) -> Result<RatPoly> {
    let mut nodes: Vec<(i64, BigRational)> = Vec::new();
    let mut extra: Vec<(i64, BigRational)> = Vec::new();
    for (x, y) in points {
        let y = BigRational::from_integer(y.clone());
        if let Some((_, prev)) = nodes.iter().chain(extra.iter()).find(|(px, _)| px == x) {
            if *prev != y {
                return Err(Error::InconsistentData { bound, at: x.to_string() });
            }
            continue;
        }
        if nodes.len() <= bound {
            nodes.push((*x, y));
        } else {
            extra.push((*x, y));
        }
    }
    if nodes.len() < bound + 1 {
        return Err(Error::InsufficientPoints { needed: bound + 1, got: nodes.len() });
    }

    // divided-difference table, in place
    let xs: Vec<BigRational> = nodes.iter().map(|(x, _)| BigRational::from_integer(BigInt::from(*x))).collect();
    let mut coef: Vec<BigRational> = nodes.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..coef.len() {
        for i in (level..coef.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = RatPoly::zero();
    let mut basis = RatPoly::one();
    for (k, c) in coef.iter().enumerate() {
        if !c.is_zero() {
            poly = &poly + &basis.scale(c);
        }
        basis = &basis * &(&RatPoly::x() - &RatPoly::constant(xs[k].clone()));
    }

    for (x, y) in &extra {
        if poly.eval_int(*x) != *y {
            return Err(Error::InconsistentData { bound, at: x.to_string() });
        }
    }
    Ok(poly)
}

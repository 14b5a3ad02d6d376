use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::{big_to_json, BinomPoly};
use crate::error::{Error, Result};

/// Integer Laurent polynomial in z. The relabelling formulas only ever need a
/// single z^{-1} term, but the type does not insist on it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(e: i32, c: BigInt) -> Self {
        let mut p = ZPoly::zero();
        p.add_term(e, c);
        p
    }

    /// Σ counts[j] z^j: the generating polynomial of a histogram.
    pub fn from_histogram(counts: &[u64]) -> Self {
        let mut p = ZPoly::zero();
        for (j, &c) in counts.iter().enumerate() {
            p.add_term(j as i32, BigInt::from(c));
        }
        p
    }

    pub fn from_ints(terms: &[(i32, i64)]) -> Self {
        let mut p = ZPoly::zero();
        for &(e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub(crate) fn from_shift_coeffs(terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut p = ZPoly::zero();
        for (i, c) in terms {
            p.add_term(i as i32, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Value at z = 1 (the number of terms counted by a generating polynomial).
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// z^k · self.
    pub fn shift(&self, k: i32) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = ZPoly::zero();
        for (e, v) in self.iter() {
            p.add_term(e, v * c);
        }
        p
    }

    /// (z - 1)^2 · self.
    pub fn mul_z_minus_1_squared(&self) -> Self {
        self * &ZPoly::from_ints(&[(2, 1), (1, -2), (0, 1)])
    }

    /// Exact quotient by (z - 1)^2, or `NotFactorable` if there is a remainder.
    pub fn div_z_minus_1_squared(&self) -> Result<Self> {
        let Some(lo) = self.min_exponent() else { return Ok(ZPoly::zero()) };
        let hi = self.max_exponent().expect("nonempty");
        let mut dense: Vec<BigInt> = (lo..=hi).map(|e| self.coeff(e)).collect();
        for _ in 0..2 {
            dense = div_z_minus_1(&dense).ok_or(Error::NotFactorable)?;
        }
        let mut q = ZPoly::zero();
        for (k, c) in dense.into_iter().enumerate() {
            q.add_term(lo + k as i32, c);
        }
        Ok(q)
    }

    /// z^j ↦ C(x + j, d). Fails on negative exponents.
    pub fn to_binom(&self, d: usize) -> Result<BinomPoly> {
        if self.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::NotRepresentable { degree: d });
        }
        Ok(BinomPoly::new(d, self.iter().map(|(e, c)| (e as usize, c.clone()))))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self.iter().map(|(e, c)| (e.to_string(), big_to_json(c))).collect();
        json!({ "basis": "z", "coeffs": coeffs })
    }
}

/// Synthetic division of an ascending coefficient vector by (z - 1).
fn div_z_minus_1(a: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    let k = a.len() - 1;
    let mut q = vec![BigInt::zero(); k];
    let mut carry = BigInt::zero();
    for j in (1..=k).rev() {
        carry += &a[j];
        q[j - 1] = carry.clone();
    }
    (carry + &a[0]).is_zero().then_some(q)
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let mut p = self.clone();
        for (e, c) in rhs.iter() {
            p.add_term(e, c.clone());
        }
        p
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let mut p = self.clone();
        for (e, c) in rhs.iter() {
            p.add_term(e, -c.clone());
        }
        p
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        let mut p = ZPoly::zero();
        for (i, a) in self.iter() {
            for (j, b) in rhs.iter() {
                p.add_term(i + j, a * b);
            }
        }
        p
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.coeffs.iter().rev().enumerate() {
            match n {
                0 if c.is_negative() => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?,
            }
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_square() {
        let sq = ZPoly::from_ints(&[(2, 1), (1, -2), (0, 1)]);
        assert_eq!(sq.div_z_minus_1_squared().unwrap(), ZPoly::one());
        let p = ZPoly::from_ints(&[(-1, 3), (0, 1), (4, 2)]);
        let prod = p.mul_z_minus_1_squared();
        assert_eq!(prod.div_z_minus_1_squared().unwrap(), p);
        assert!(matches!(ZPoly::from_ints(&[(2, 1)]).div_z_minus_1_squared(), Err(Error::NotFactorable)));
        // divisible by (z-1) once only
        assert!(ZPoly::from_ints(&[(1, 1), (0, -1)]).div_z_minus_1_squared().is_err());
        assert_eq!(ZPoly::zero().div_z_minus_1_squared().unwrap(), ZPoly::zero());
    }

    #[test]
    fn histogram_and_display() {
        let d = ZPoly::from_histogram(&[1, 0, 2]);
        assert_eq!(d.to_string(), "2*z^2 + 1");
        assert_eq!(d.at_one(), BigInt::from(3));
        assert_eq!(ZPoly::from_ints(&[(1, 2), (-1, 1)]).to_string(), "2*z + z^-1");
        assert!(d.to_binom(3).is_ok());
        assert!(ZPoly::from_ints(&[(-1, 1)]).to_binom(3).is_err());
    }
}

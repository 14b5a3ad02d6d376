use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::{big_from_json, big_to_json, RatPoly, ZPoly};
use crate::error::{Error, Result};

/// C(y, d) = y (y - 1) ... (y - d + 1) / d!, valid for negative `y` too.
pub fn binomial(y: &BigInt, d: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..d {
        num *= y - BigInt::from(k);
        den *= BigInt::from(k + 1);
    }
    // the falling factorial is always divisible by d!
    num / den
}

/// Σ_i c_i · C(x + i, d): a polynomial written in the shifted binomial basis.
///
/// Equality is coefficient-wise. Shifts `i ≤ d` form a basis of the
/// integer-valued polynomials of degree at most `d`; larger shifts are
/// allowed (Ψ of a one-vertex digraph never needs them, but sums can) and are
/// only canonical up to [`BinomPoly::canonical`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinomPoly {
    degree: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl BinomPoly {
    pub fn zero(degree: usize) -> Self {
        BinomPoly { degree, coeffs: BTreeMap::new() }
    }

    pub fn new(degree: usize, coeffs: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut p = Self::zero(degree);
        for (i, c) in coeffs {
            p.add_term(i, c);
        }
        p
    }

    /// Coefficient `counts[i]` on C(x + i, d); this is how Ψ is built from a δ-histogram.
    pub fn from_counts(degree: usize, counts: &[u64]) -> Self {
        Self::new(degree, counts.iter().enumerate().map(|(i, &c)| (i, BigInt::from(c))))
    }

    pub fn from_ints(degree: usize, coeffs: &[(usize, i64)]) -> Self {
        Self::new(degree, coeffs.iter().map(|&(i, c)| (i, BigInt::from(c))))
    }

    fn add_term(&mut self, i: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_shift(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Dense coefficient vector c_0..c_{max shift}.
    pub fn to_vec(&self) -> Vec<BigInt> {
        match self.max_shift() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|i| self.coeff(i)).collect(),
        }
    }

    /// All coefficients ≥ 0.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Sum of the coefficients.
    pub fn total(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.iter().map(|(i, c)| c * binomial(&(x + BigInt::from(i)), self.degree)).sum()
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn to_monomial(&self) -> RatPoly {
        let fact: BigInt = (1..=self.degree).map(BigInt::from).product();
        let inv = BigRational::new(BigInt::one(), fact);
        let mut acc = RatPoly::zero();
        for (i, c) in self.iter() {
            let term = RatPoly::shifted_falling_factorial(i as i64, self.degree);
            acc = &acc + &term.scale(&(BigRational::from_integer(c.clone()) * &inv));
        }
        acc
    }

    /// Expresses `p` as Σ_{i=0}^{d} c_i C(x+i, d) with integer c_i.
    ///
    /// At x = k only the shifts i ≥ d - k contribute and C(d, d) = 1, so the
    /// values at 0, 1, ..., d determine c_d, c_{d-1}, ..., c_0 in turn.
    pub fn from_monomial(p: &RatPoly, d: usize) -> Result<Self> {
        let not_rep = || Error::NotRepresentable { degree: d };
        if p.degree().is_some_and(|k| k > d) {
            return Err(not_rep());
        }
        let mut out = Self::zero(d);
        for k in 0..=d {
            let v = p.eval_int(k as i64);
            if !v.is_integer() {
                return Err(not_rep());
            }
            let mut rest = v.to_integer();
            for i in (d - k + 1)..=d {
                rest -= out.coeff(i) * binomial(&BigInt::from(k + i), d);
            }
            out.add_term(d - k, rest);
        }
        if &out.to_monomial() != p {
            return Err(not_rep());
        }
        Ok(out)
    }

    /// The same polynomial with all shifts in 0..=d.
    pub fn canonical(&self) -> Self {
        if self.max_shift().is_none_or(|m| m <= self.degree) {
            return self.clone();
        }
        Self::from_monomial(&self.to_monomial(), self.degree).expect("integer span is closed under re-expansion")
    }

    /// Same polynomial (as a function of x), regardless of which shifts are used.
    pub fn same_polynomial(&self, other: &BinomPoly) -> bool {
        self.to_monomial() == other.to_monomial()
    }

    /// Undoes C(x+i+2,n) - 2C(x+i+1,n) + C(x+i,n) = C(x+i,n-2): returns the
    /// degree-(n-2) polynomial whose shift vector convolved with (1,-2,1)
    /// gives this one's.
    pub fn collapse(&self) -> Result<Self> {
        if self.degree < 2 {
            return Err(Error::PreconditionViolated(format!("collapse needs degree at least 2, got {}", self.degree)));
        }
        let z = ZPoly::from_shift_coeffs(self.iter().map(|(i, c)| (i, c.clone())));
        let q = z.div_z_minus_1_squared()?;
        q.to_binom(self.degree - 2)
    }

    /// Inverse of [`collapse`](Self::collapse).
    pub fn uncollapse(&self) -> Self {
        let z = ZPoly::from_shift_coeffs(self.iter().map(|(i, c)| (i, c.clone())));
        z.mul_z_minus_1_squared().to_binom(self.degree + 2).expect("nonnegative exponents")
    }

    /// Shift coefficients viewed as a polynomial in z (i ↦ z^i).
    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::from_shift_coeffs(self.iter().map(|(i, c)| (i, c.clone())))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self.iter().map(|(i, c)| (i.to_string(), big_to_json(c))).collect();
        json!({ "basis": "binom", "d": self.degree, "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse { line: 0, message: format!("binomial polynomial JSON: {m}") };
        if v.get("basis").and_then(Value::as_str) != Some("binom") {
            return Err(bad("basis must be \"binom\""));
        }
        let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| bad("missing degree d"))? as usize;
        let coeffs = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        let mut p = Self::zero(d);
        for (i, c) in coeffs {
            let i: usize = i.parse().map_err(|_| bad("shift must be a non-negative integer"))?;
            p.add_term(i, big_from_json(c).ok_or_else(|| bad("coefficient must be an integer"))?);
        }
        Ok(p)
    }

    fn check_degree(&self, other: &BinomPoly) {
        assert_eq!(self.degree, other.degree, "binomial polynomials of different degree");
    }
}

impl Add for &BinomPoly {
    type Output = BinomPoly;
    fn add(self, rhs: &BinomPoly) -> BinomPoly {
        self.check_degree(rhs);
        let mut p = self.clone();
        for (i, c) in rhs.iter() {
            p.add_term(i, c.clone());
        }
        p
    }
}

impl Sub for &BinomPoly {
    type Output = BinomPoly;
    fn sub(self, rhs: &BinomPoly) -> BinomPoly {
        self.check_degree(rhs);
        let mut p = self.clone();
        for (i, c) in rhs.iter() {
            p.add_term(i, -c.clone());
        }
        p
    }
}

impl fmt::Display for BinomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree;
        for (n, (i, c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match n {
                0 if c.is_negative() => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let arg = if *i == 0 { "x".to_string() } else { format!("x+{i}") };
            if mag.is_one() {
                write!(f, "C({arg},{d})")?;
            } else {
                write!(f, "{mag}*C({arg},{d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinomPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(d: usize, c: &[(usize, i64)]) -> BinomPoly {
        BinomPoly::from_ints(d, c)
    }

    #[test]
    fn binomial_handles_negative_tops() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(2), 3), BigInt::zero());
        // C(-1, 3) = (-1)(-2)(-3)/6
        assert_eq!(binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(-4), 0), BigInt::one());
    }

    #[test]
    fn expansion_fixtures() {
        assert_eq!(b(2, &[(1, 2)]).to_monomial(), RatPoly::from_ints(&[0, 1, 1]));
        assert_eq!(b(1, &[(0, 1)]).to_monomial(), RatPoly::x());
        let p = b(3, &[(2, 1), (1, 2)]);
        let m = p.to_monomial();
        for x in 0..=3 {
            assert_eq!(m.eval_int(x), BigRational::from_integer(p.eval_int(x)));
        }
    }

    #[test]
    fn monomial_to_binom_fixtures() {
        assert_eq!(BinomPoly::from_monomial(&RatPoly::x(), 1).unwrap(), b(1, &[(0, 1)]));
        assert_eq!(BinomPoly::from_monomial(&RatPoly::from_ints(&[0, 1, 1]), 2).unwrap(), b(2, &[(1, 2)]));
        // x^2 = C(x+2,3) - C(x,3) is representable once shifts 0..=d are used
        assert_eq!(BinomPoly::from_monomial(&RatPoly::from_ints(&[0, 0, 1]), 3).unwrap(), b(3, &[(2, 1), (0, -1)]));
        // too high a degree, or not integer-valued
        assert!(matches!(
            BinomPoly::from_monomial(&RatPoly::from_ints(&[0, 0, 0, 1]), 2),
            Err(Error::NotRepresentable { degree: 2 })
        ));
        let half_x = RatPoly::monomial(1, BigRational::new(1.into(), 2.into()));
        assert!(BinomPoly::from_monomial(&half_x, 1).is_err());
    }

    #[test]
    fn collapse_fixtures() {
        assert_eq!(b(3, &[(2, 1), (1, -2), (0, 1)]).collapse().unwrap(), b(1, &[(0, 1)]));
        assert_eq!(BinomPoly::zero(3).collapse().unwrap(), BinomPoly::zero(1));
        assert!(matches!(b(3, &[(2, 1)]).collapse(), Err(Error::NotFactorable)));
        let d = b(2, &[(0, 3), (1, 1)]);
        let up = d.uncollapse();
        assert!(up.same_polynomial(&BinomPoly::from_monomial(&d.to_monomial(), 2).unwrap().uncollapse()));
        assert_eq!(up.collapse().unwrap(), d);
        // the identity itself, as functions
        assert_eq!(up.to_monomial(), d.to_monomial());
    }

    #[test]
    fn json_round_trip() {
        let p = b(4, &[(0, -3), (3, 12)]);
        let v = p.to_json();
        assert_eq!(v["basis"], "binom");
        assert_eq!(v["coeffs"]["3"], 12);
        assert_eq!(BinomPoly::from_json(&v).unwrap(), p);
        assert_eq!(p.to_string(), "12*C(x+3,4) - 3*C(x,4)");
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Exact polynomial in x with rational coefficients, monomial basis.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: BTreeMap<usize, BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: usize, c: BigRational) -> Self {
        let mut p = RatPoly::zero();
        p.add_term(k, c);
        p
    }

    /// From integer coefficients listed by ascending exponent.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        let mut p = RatPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(k, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// x (x - 1) ... (x - d + 1) shifted: the product of (x + s - k) for k in 0..d.
    pub(crate) fn shifted_falling_factorial(shift: i64, d: usize) -> Self {
        let mut p = RatPoly::one();
        for k in 0..d as i64 {
            let factor = RatPoly::from_ints(&[shift - k, 1]);
            p = &p * &factor;
        }
        p
    }

    fn add_term(&mut self, k: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = RatPoly::zero();
        for (k, v) in self.iter() {
            p.add_term(k, v * c);
        }
        p
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner from the top exponent down
        let Some(top) = self.degree() else { return BigRational::zero() };
        let mut acc = BigRational::zero();
        for k in (0..=top).rev() {
            acc = acc * x + self.coeff(k);
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// p(-x).
    pub fn compose_neg(&self) -> Self {
        let mut p = RatPoly::zero();
        for (k, c) in self.iter() {
            p.add_term(k, if k % 2 == 1 { -c.clone() } else { c.clone() });
        }
        p
    }

    /// All coefficients are integers.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> =
            self.iter().map(|(k, c)| (k.to_string(), Value::String(rational_to_string(c)))).collect();
        json!({ "basis": "monomial", "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse { line: 0, message: format!("monomial polynomial JSON: {m}") };
        if v.get("basis").and_then(Value::as_str) != Some("monomial") {
            return Err(bad("basis must be \"monomial\""));
        }
        let coeffs = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        let mut p = RatPoly::zero();
        for (k, c) in coeffs {
            let k: usize = k.parse().map_err(|_| bad("exponent must be a non-negative integer"))?;
            let c = c.as_str().ok_or_else(|| bad("coefficient must be a string"))?;
            p.add_term(k, parse_rational(c).ok_or_else(|| bad("bad rational"))?);
        }
        Ok(p)
    }
}

fn rational_to_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let mut p = self.clone();
        for (k, c) in rhs.iter() {
            p.add_term(k, c.clone());
        }
        p
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let mut p = self.clone();
        for (k, c) in rhs.iter() {
            p.add_term(k, -c.clone());
        }
        p
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        let mut p = RatPoly::zero();
        for (i, a) in self.iter() {
            for (j, b) in rhs.iter() {
                p.add_term(i + j, a * b);
            }
        }
        p
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = rational_to_string(&mag);
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coeff}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{coeff}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = RatPoly::from_ints(&[0, -1, 1]); // x^2 - x
        assert_eq!(p.to_string(), "x^2 - x");
        let q = &p * &RatPoly::from_ints(&[1, 1]);
        assert_eq!(q, RatPoly::from_ints(&[0, -1, 0, 1]));
        assert_eq!((&q - &q), RatPoly::zero());
        assert_eq!(p.compose_neg(), RatPoly::from_ints(&[0, 1, 1]));
        assert_eq!(p.eval_int(3), BigRational::from_integer(6.into()));
        let half = RatPoly::constant(BigRational::new(1.into(), 2.into()));
        assert_eq!((&half + &RatPoly::x()).to_string(), "x + 1/2");
    }

    #[test]
    fn json_round_trip() {
        let p = &RatPoly::from_ints(&[3, 0, -2]) + &RatPoly::monomial(5, BigRational::new((-7).into(), 3.into()));
        let v = p.to_json();
        assert_eq!(v["coeffs"]["5"], "-7/3");
        assert_eq!(RatPoly::from_json(&v).unwrap(), p);
    }
}

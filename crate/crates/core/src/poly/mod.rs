//! Exact polynomials: shifted binomial basis, rational monomial basis, and
//! integer Laurent polynomials in z.

mod binom;
mod interpolate;
mod rat;
mod zpoly;

pub use binom::{binomial, BinomPoly};
pub use interpolate::interpolate;
pub use rat::RatPoly;
pub use zpoly::ZPoly;

use num_bigint::BigInt;
use serde_json::Value;

/// Big integers become exact JSON numbers (serde_json is built with
/// arbitrary precision, so nothing is rounded through f64).
pub(crate) fn big_to_json(c: &BigInt) -> Value {
    let n: serde_json::Number = serde_json::from_str(&c.to_string()).expect("decimal integer is a JSON number");
    Value::Number(n)
}

pub(crate) fn big_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn huge_integers_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = big_to_json(&big);
        assert_eq!(serde_json::to_string(&v).unwrap(), "123456789012345678901234567890");
        assert_eq!(big_from_json(&v).unwrap(), big);
    }

    fn arb_binom() -> impl Strategy<Value = BinomPoly> {
        (0usize..6).prop_flat_map(|d| {
            proptest::collection::vec(-20i64..20, d + 1)
                .prop_map(move |cs| BinomPoly::new(d, cs.into_iter().enumerate().map(|(i, c)| (i, BigInt::from(c)))))
        })
    }

    proptest! {
        #[test]
        fn round_trip_through_monomials(p in arb_binom()) {
            let back = BinomPoly::from_monomial(&p.to_monomial(), p.degree()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in arb_binom(), x in -5i64..=5) {
            let direct: BigInt = p
                .iter()
                .map(|(i, c)| c * binomial(&BigInt::from(x + i as i64), p.degree()))
                .sum();
            prop_assert_eq!(p.to_monomial().eval_int(x), BigRational::from_integer(direct));
        }

        #[test]
        fn collapse_is_polynomial_identity(p in arb_binom()) {
            let up = p.uncollapse();
            prop_assert_eq!(up.to_monomial(), p.to_monomial());
            prop_assert_eq!(up.collapse().unwrap(), p);
        }
    }
}

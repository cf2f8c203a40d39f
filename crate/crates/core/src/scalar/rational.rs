// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{json_err, Scalar, ScalarKind};
use crate::error::Result;

/// Arbitrary-precision rationals, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `"p/q"`, always with an explicit denominator.
pub fn rational_to_json(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rational_from_json(value: &serde_json::Value) -> Result<Rational> {
    let s = value.as_str().ok_or_else(|| json_err("\"p/q\" string", value))?;
    let parsed = match s.split_once('/') {
        Some((p, q)) => p
            .trim()
            .parse::<BigInt>()
            .ok()
            .zip(q.trim().parse::<BigInt>().ok())
            .filter(|(_, q)| !q.is_zero())
            .map(|(p, q)| Rational::new(p, q)),
        None => s.trim().parse::<BigInt>().ok().map(Rational::from_integer),
    };
    parsed.ok_or_else(|| json_err("\"p/q\" string", value))
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn dagger(&self) -> Self {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn same_modulus(&self, other: &Self) -> bool {
        self.abs() == other.abs()
    }

    fn phase_normalizer(&self) -> Self {
        if self.is_negative() {
            -<Rational as One>::one()
        } else {
            <Rational as One>::one()
        }
    }

    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        (!Zero::is_zero(divisor)).then(|| self / divisor)
    }

    fn to_json(&self) -> serde_json::Value {
        rational_to_json(self)
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        rational_from_json(value)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let p = self.numer().sqrt();
        let q = self.denom().sqrt();
        (&p * &p == *self.numer() && &q * &q == *self.denom()).then(|| Rational::new(p, q))
    }

    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_p_over_q() {
        let r = Rational::new(BigInt::from(-3), BigInt::from(12));
        assert_eq!(rational_to_json(&r), serde_json::json!("-1/4"));
        assert_eq!(rational_from_json(&serde_json::json!("-1/4")).unwrap(), r);
        assert_eq!(rational_to_json(&<Rational as Zero>::zero()), serde_json::json!("0/1"));
        assert!(rational_from_json(&serde_json::json!("1/0")).is_err());
    }

    #[test]
    fn idempotents_are_zero_and_one() {
        let candidates = [-1i64, 0, 1, 2].map(|n| Rational::from_integer(n.into()));
        let n = candidates.iter().filter(|x| x.mul(x) == **x).count();
        assert_eq!(n, 2);
    }

    #[test]
    fn sqrt_of_quarter() {
        let q = Rational::new(1.into(), 4.into());
        assert_eq!(Scalar::sqrt(&q), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(Scalar::sqrt(&Rational::from_integer(2.into())), None);
    }
}

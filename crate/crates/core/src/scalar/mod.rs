// SPDX-License-Identifier: Apache-2.0

//! Exact number systems.
//!
//! Every morphism in the crate is a matrix over a [`Scalar`]: a commutative
//! semiring with an involution (`dagger`). Three implementations exist:
//!
//! * [`CycloScalar`]: elements of ℤ\[ω\] divided by a power of √2, where ω is
//!   a primitive 8th root of unity. All stabiliser amplitudes live here.
//! * [`BoolScalar`]: the Boolean semiring (`1 + 1 = 1`) used by relations.
//! * [`Rational`]: arbitrary-precision rationals for probabilities and
//!   hidden-variable measures.

mod boolean;
mod cyclo;
mod rational;

pub use boolean::BoolScalar;
pub use cyclo::CycloScalar;
pub use rational::{rational_from_json, rational_to_json, Rational};

use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::error::{Error, Result};

/// Which concrete number system a scalar type is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Cyclotomic,
    Boolean,
    Rational,
}

impl Display for ScalarKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarKind::Cyclotomic => f.write_str("cyclotomic"),
            ScalarKind::Boolean => f.write_str("boolean"),
            ScalarKind::Rational => f.write_str("rational"),
        }
    }
}

/// A commutative semiring with an involution, in canonical form.
///
/// `Eq` and `Hash` must agree with value equality, which is why every
/// implementation keeps its values canonical. `Ord` is an arbitrary but fixed
/// total order used only to make enumeration output deterministic.
pub trait Scalar: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Complex conjugation; the identity on real semirings.
    fn dagger(&self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `|self| == |other|`, the condition for `other / self` to be a phase.
    fn same_modulus(&self, other: &Self) -> bool;

    /// A unit-modulus `u` such that `u * self` is a preferred representative
    /// of its phase class (for the cyclotomic ring: positive real whenever
    /// some power of ω achieves that). Returns one for zero.
    fn phase_normalizer(&self) -> Self;

    /// Exact quotient, when it exists in the semiring.
    fn checked_div(&self, divisor: &Self) -> Option<Self>;

    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self>;

    /// Exact square root, if one exists in the semiring.
    fn sqrt(&self) -> Option<Self>;

    /// Additive inverse, if one exists in the semiring.
    fn checked_neg(&self) -> Option<Self>;
}

/// Sum of an iterator of scalars.
pub fn sum<'a, S: Scalar, I: IntoIterator<Item = &'a S>>(items: I) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc.add(x))
}

pub(crate) fn json_err(what: &str, value: &serde_json::Value) -> Error {
    Error::Json(format!("expected {what}, found {value}"))
}

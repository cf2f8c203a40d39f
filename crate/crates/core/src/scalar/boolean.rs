// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::{json_err, Scalar, ScalarKind};
use crate::error::Result;

/// The Boolean semiring: `+` is OR, `·` is AND. Numbers of the category of
/// finite sets and relations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoolScalar(pub bool);

impl BoolScalar {
    pub const FALSE: BoolScalar = BoolScalar(false);
    pub const TRUE: BoolScalar = BoolScalar(true);

    pub fn value(self) -> bool {
        self.0
    }
}

impl From<bool> for BoolScalar {
    fn from(b: bool) -> Self {
        BoolScalar(b)
    }
}

impl Scalar for BoolScalar {
    const KIND: ScalarKind = ScalarKind::Boolean;

    fn zero() -> Self {
        BoolScalar(false)
    }

    fn one() -> Self {
        BoolScalar(true)
    }

    fn add(&self, other: &Self) -> Self {
        BoolScalar(self.0 || other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        BoolScalar(self.0 && other.0)
    }

    fn dagger(&self) -> Self {
        *self
    }

    fn same_modulus(&self, other: &Self) -> bool {
        self == other
    }

    fn phase_normalizer(&self) -> Self {
        BoolScalar(true)
    }

    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        divisor.0.then_some(*self)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(u8::from(self.0))
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value.as_u64() {
            Some(0) => Ok(BoolScalar(false)),
            Some(1) => Ok(BoolScalar(true)),
            _ => Err(json_err("0 or 1", value)),
        }
    }

    fn sqrt(&self) -> Option<Self> {
        Some(*self)
    }

    fn checked_neg(&self) -> Option<Self> {
        (!self.0).then_some(*self)
    }
}

impl fmt::Display for BoolScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl fmt::Debug for BoolScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

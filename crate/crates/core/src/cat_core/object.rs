// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// `Q ⊗ … ⊗ Q` (`power` factors) for a generating object `Q` of dimension
/// `base_dim`. Power zero is the monoidal unit `I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoryObject {
    pub power: u32,
    pub base_dim: usize,
}

impl TheoryObject {
    pub fn new(power: u32, base_dim: usize) -> Self {
        assert!(base_dim > 0, "base dimension must be positive");
        TheoryObject { power, base_dim }
    }

    pub fn unit(base_dim: usize) -> Self {
        Self::new(0, base_dim)
    }

    pub fn is_unit(&self) -> bool {
        self.power == 0
    }

    pub fn dim(&self) -> usize {
        self.base_dim.pow(self.power)
    }

    pub fn tensor(&self, other: &TheoryObject) -> TheoryObject {
        debug_assert_eq!(self.base_dim, other.base_dim);
        TheoryObject::new(self.power + other.power, self.base_dim)
    }

    pub fn with_power(&self, power: u32) -> TheoryObject {
        TheoryObject::new(power, self.base_dim)
    }
}

impl fmt::Display for TheoryObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => f.write_str("I"),
            1 => write!(f, "Q{}", self.base_dim),
            n => write!(f, "Q{}^{}", self.base_dim, n),
        }
    }
}

impl fmt::Debug for TheoryObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

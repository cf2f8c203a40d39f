// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::cat_core::{DiagramTerm, Generators, Morphism, TheoryObject};
use crate::error::{Error, Result};
use crate::frobenius::{check_observable, is_unitary, Observable};
use crate::scalar::{BoolScalar, CycloScalar, Scalar, ScalarKind};

/// Order of the single-system generator group in both theories.
pub const SINGLE_GROUP_ORDER: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoryName {
    Stab,
    Spek,
}

impl TheoryName {
    pub const ALL: [TheoryName; 2] = [TheoryName::Stab, TheoryName::Spek];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoryName::Stab => "stab",
            TheoryName::Spek => "spek",
        }
    }
}

impl fmt::Display for TheoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoryName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "stab" => Ok(TheoryName::Stab),
            "spek" => Ok(TheoryName::Spek),
            _ => Err(Error::UnknownTheory(s.to_string())),
        }
    }
}

/// A theory given by its generators on one object `Q`.
#[derive(Clone, Debug)]
pub struct TheoryBinding<S> {
    pub name: TheoryName,
    pub base_dim: usize,
    /// The single-system group, sorted; Stab's are phase-canonical.
    pub singles: Vec<Morphism<S>>,
    pub hadamard: Morphism<S>,
    /// The generating observable, labelled `Z`.
    pub observable: Observable<S>,
    /// Two-wire entangling gate from the CNOT diagram, rescaled to be unitary.
    pub entangler: Morphism<S>,
}

impl<S: Scalar> TheoryBinding<S> {
    pub fn object(&self, power: u32) -> TheoryObject {
        TheoryObject::new(power, self.base_dim)
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        S::KIND
    }

    /// The observable's generators plus `H` and each single-system element
    /// `g{k}`.
    pub fn generators(&self) -> Generators<S> {
        let mut g = self.observable.generators();
        g.named.insert("H".into(), self.hadamard.clone());
        for (k, u) in self.singles.iter().enumerate() {
            g.named.insert(format!("g{k}"), u.clone());
        }
        g
    }

    /// `(1 ⊗ (H ∘ δ† ∘ (H ⊗ H))) ∘ (δ ⊗ 1)`.
    pub fn cnot_term() -> DiagramTerm {
        use DiagramTerm as T;
        let h = || T::gen("H");
        let target = T::compose(h(), T::compose(T::DeltaDag, T::tensor(h(), h())));
        T::compose(T::tensor(T::Id(1), target), T::tensor(T::Delta, T::Id(1)))
    }

    /// `ε†/√dim`, the unit-length form of the counit's dagger.
    pub fn normalized_unit(&self) -> Result<Morphism<S>> {
        let s = self.observable.sqrt_dim()?;
        let inv = S::one()
            .checked_div(&s)
            .ok_or_else(|| Error::Ring(format!("1/{s} is not in the scalar ring")))?;
        Ok(self.observable.unit_state().scale(&inv))
    }

    fn finish(
        name: TheoryName,
        base_dim: usize,
        singles: Vec<Morphism<S>>,
        hadamard: Morphism<S>,
        observable: Observable<S>,
    ) -> Result<Self> {
        if singles.len() != SINGLE_GROUP_ORDER {
            return Err(Error::Enumeration(format!(
                "{name}: single-system closure has {} elements, expected {SINGLE_GROUP_ORDER}",
                singles.len()
            )));
        }
        let report = check_observable(&observable.delta, &observable.epsilon)?;
        if !report.all_pass() {
            return Err(Error::InvalidObservable(format!("{name}: {}", report.failures().join(", "))));
        }
        let mut t = TheoryBinding {
            name,
            base_dim,
            singles,
            hadamard,
            observable,
            entangler: Morphism::identity(TheoryObject::new(2, base_dim)),
        };
        let raw = Self::cnot_term().evaluate(&t.generators())?;
        let e = raw.scale(&t.observable.sqrt_dim()?);
        if !is_unitary(&e) {
            return Err(Error::Enumeration(format!("{name}: rescaled CNOT diagram is not unitary")));
        }
        t.entangler = e;
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name.as_str(),
            "base_dim": self.base_dim,
            "scalar_kind": self.scalar_kind().to_string(),
            "single_group_order": self.singles.len(),
            "delta": self.observable.delta.to_json(),
            "epsilon": self.observable.epsilon.to_json(),
            "hadamard": self.hadamard.to_json(),
            "entangler": self.entangler.to_json(),
        })
    }
}

/// Closure of `gens` under composition, deduplicated by `key`.
fn closure<S: Scalar>(
    gens: &[Morphism<S>],
    key: impl Fn(&Morphism<S>) -> Morphism<S>,
    cap: usize,
) -> Result<Vec<Morphism<S>>> {
    let id = Morphism::identity(gens[0].dom());
    let mut seen = BTreeSet::from([key(&id)]);
    let mut frontier = vec![key(&id)];
    while let Some(u) = frontier.pop() {
        for g in gens {
            let v = key(&g.compose(&u)?);
            if seen.insert(v.clone()) {
                if seen.len() > cap {
                    return Err(Error::Enumeration(format!("closure exceeded {cap} elements")));
                }
                frontier.push(v);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Stabiliser qubits: Cliffords mod phase from `H` and `S`, the computational
/// basis copier and `ε = ⟨0| + ⟨1|`.
pub fn stab() -> Result<TheoryBinding<CycloScalar>> {
    let q = TheoryObject::new(1, 2);
    let c = |v: i64| CycloScalar::from_int(v);
    let h = Morphism::new(q, q, vec![c(1), c(1), c(1), c(-1)])?.scale(&CycloScalar::inv_root2());
    let s = Morphism::new(q, q, vec![c(1), c(0), c(0), CycloScalar::i()])?;
    let singles = closure(&[h.clone(), s], Morphism::canonical_phase, 4 * SINGLE_GROUP_ORDER)?;
    let delta = Morphism::from_fn(q, q.with_power(2), |r, col| c(i64::from(r == 3 * col)));
    let epsilon = Morphism::new(q, q.with_power(0), vec![c(1), c(1)])?;
    let obs = Observable::new("Z", delta, epsilon)?;
    TheoryBinding::finish(TheoryName::Stab, 2, singles, h, obs)
}

fn permutation(perm: [usize; 4]) -> Morphism<BoolScalar> {
    let q = TheoryObject::new(1, 4);
    Morphism::from_fn(q, q, |r, c| BoolScalar(perm[c] == r))
}

/// The toy bit on the four ontic states `0..4` (written `1..=4` in
/// labels): all permutations, the relation `δ` copying within the blocks
/// `{1,2}` and `{3,4}`, and `ε = {1,3}`.
pub fn spek() -> Result<TheoryBinding<BoolScalar>> {
    let q = TheoryObject::new(1, 4);
    let singles = closure(&[permutation([1, 0, 2, 3]), permutation([1, 2, 3, 0])], Clone::clone, 4 * SINGLE_GROUP_ORDER)?;
    let pairs: BTreeMap<usize, [(usize, usize); 2]> = BTreeMap::from([
        (0, [(0, 0), (1, 1)]),
        (1, [(0, 1), (1, 0)]),
        (2, [(2, 2), (3, 3)]),
        (3, [(2, 3), (3, 2)]),
    ]);
    let delta = Morphism::from_fn(q, q.with_power(2), |r, c| BoolScalar(pairs[&c].contains(&(r / 4, r % 4))));
    let epsilon = Morphism::from_fn(q, q.with_power(0), |_, c| BoolScalar(c == 0 || c == 2));
    let obs = Observable::new("Z", delta, epsilon)?;
    TheoryBinding::finish(TheoryName::Spek, 4, singles, permutation([0, 2, 1, 3]), obs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stab_generators() {
        let t = stab().unwrap();
        assert_eq!(t.singles.len(), 24);
        let q = t.object(2);
        let c = |v: i64| CycloScalar::from_int(v);
        let cnot = Morphism::from_fn(q, q, |r, col| {
            let target = if col >= 2 { col ^ 1 } else { col };
            c(i64::from(r == target))
        });
        assert_eq!(t.entangler, cnot);
    }

    #[test]
    fn spek_generators() {
        let t = spek().unwrap();
        assert_eq!(t.singles.len(), 24);
        // 2 ↦ {(1,2),(2,1)} in 1-based labels.
        let col: Vec<usize> = (0..16).filter(|&r| t.observable.delta.get(r, 1).0).collect();
        assert_eq!(col, vec![1, 4]);
        assert!(is_unitary(&t.entangler));
    }

    #[test]
    fn names_parse() {
        assert_eq!("Stab".parse::<TheoryName>().unwrap(), TheoryName::Stab);
        assert!("qutrit".parse::<TheoryName>().is_err());
    }
}

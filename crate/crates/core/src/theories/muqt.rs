// SPDX-License-Identifier: Apache-2.0

use super::{enumerate_states, spek, spek_observables, stab, stab_observables, StateSpace, TheoryBinding, TheoryName, DEFAULT_DEPTH_BOUND};
use crate::cat_core::Morphism;
use crate::error::Result;
use crate::frobenius::{eigenstates, is_unbiased, phase_group, rescale, Observable, StateCatalog};
use crate::ghz::IsoClass;
use crate::scalar::{BoolScalar, CycloScalar, Scalar};

/// Scalars with a concrete theory attached.
pub trait Concrete: Scalar {
    const NAME: TheoryName;
    fn binding() -> Result<TheoryBinding<Self>>;
    fn observables(t: &TheoryBinding<Self>) -> Result<Vec<Observable<Self>>>;
}

impl Concrete for CycloScalar {
    const NAME: TheoryName = TheoryName::Stab;

    fn binding() -> Result<TheoryBinding<Self>> {
        stab()
    }

    fn observables(t: &TheoryBinding<Self>) -> Result<Vec<Observable<Self>>> {
        stab_observables(t)
    }
}

impl Concrete for BoolScalar {
    const NAME: TheoryName = TheoryName::Spek;

    fn binding() -> Result<TheoryBinding<Self>> {
        spek()
    }

    fn observables(t: &TheoryBinding<Self>) -> Result<Vec<Observable<Self>>> {
        spek_observables(t)
    }
}

/// A theory with its single-system states and observables enumerated.
#[derive(Clone, Debug)]
pub struct Theory<S> {
    pub binding: TheoryBinding<S>,
    pub states: StateSpace<S>,
    /// Ordered `[Z, X, Y]`.
    pub observables: Vec<Observable<S>>,
}

impl<S: Concrete> Theory<S> {
    pub fn build() -> Result<Self> {
        let binding = S::binding()?;
        let states = enumerate_states(&binding, 1, DEFAULT_DEPTH_BOUND)?.require_fixpoint()?;
        let observables = S::observables(&binding)?;
        Ok(Theory {
            binding,
            states,
            observables,
        })
    }
}

impl<S: Scalar> Theory<S> {
    pub fn name(&self) -> TheoryName {
        self.binding.name
    }

    pub fn observable(&self, label: &str) -> Option<&Observable<S>> {
        self.observables.iter().find(|o| o.label == label)
    }

    /// Eigenstates of each observable in outcome order: the one equal to
    /// `ε_Z†/√dim` up to phase first, then by first nonzero entry.
    pub fn eigenbases(&self) -> Result<Vec<Vec<Morphism<S>>>> {
        let unit = self.binding.normalized_unit()?;
        self.observables
            .iter()
            .map(|o| {
                let mut e = eigenstates(o, &self.states.states)?;
                e.sort_by_key(|x| {
                    let first = x.entries().iter().position(|v| !v.is_zero());
                    (!x.equal_up_to_phase(&unit), first, x.clone())
                });
                Ok(e)
            })
            .collect()
    }

    pub fn catalog(&self) -> Result<StateCatalog<S>> {
        StateCatalog::build(&self.observables, &self.states.states)
    }
}

/// The five conditions for a mutually unbiased qubit theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuqtReport {
    /// (1) observables and states live on one generating object.
    pub objects: bool,
    /// (2) equal eigenstate counts and isomorphic phase groups.
    pub alike: bool,
    /// (3) eigenstates of each observable are unbiased for every other.
    pub mutually_unbiased: bool,
    /// (4) every state is an eigenstate of some observable.
    pub states_are_eigen: bool,
    /// (5) three observables with two eigenstates each.
    pub three_by_two: bool,
    pub eigen_counts: Vec<usize>,
    pub phase_groups: Vec<Option<IsoClass>>,
}

impl MuqtReport {
    pub fn is_muqt(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<u8> {
        [
            self.objects,
            self.alike,
            self.mutually_unbiased,
            self.states_are_eigen,
            self.three_by_two,
        ]
        .iter()
        .zip(1u8..)
        .filter(|(ok, _)| !**ok)
        .map(|(_, i)| i)
        .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let groups: Vec<_> = self
            .phase_groups
            .iter()
            .map(|g| g.as_ref().map(ToString::to_string))
            .collect();
        serde_json::json!({
            "muqt": self.is_muqt(),
            "conditions": {
                "1_objects": self.objects,
                "2_alike": self.alike,
                "3_mutually_unbiased": self.mutually_unbiased,
                "4_states_are_eigen": self.states_are_eigen,
                "5_three_by_two": self.three_by_two,
            },
            "eigen_counts": self.eigen_counts,
            "phase_groups": groups,
        })
    }
}

/// Checks the MUQT conditions for an arbitrary list of observables and
/// single-system states.
pub fn verify_muqt_parts<S: Scalar>(observables: &[Observable<S>], states: &[Morphism<S>]) -> Result<MuqtReport> {
    let object = observables.first().map(Observable::object);
    let objects = object.is_some_and(|q| {
        q.power == 1 && observables.iter().all(|o| o.object() == q) && states.iter().all(|s| s.cod() == q)
    });
    let mut eig = Vec::new();
    let mut phase_groups = Vec::new();
    for o in observables {
        eig.push(eigenstates(o, states)?);
        phase_groups.push(phase_group(o, states).ok().map(|g| g.iso));
    }
    let eigen_counts: Vec<usize> = eig.iter().map(Vec::len).collect();
    let alike = !observables.is_empty()
        && eigen_counts.iter().all(|&c| c == eigen_counts[0])
        && phase_groups.iter().all(|g| g.is_some() && *g == phase_groups[0]);
    let mut mutually_unbiased = true;
    for (a, ea) in eig.iter().enumerate() {
        for (b, ob) in observables.iter().enumerate() {
            if a != b {
                for x in ea {
                    mutually_unbiased &= is_unbiased(ob, &rescale(ob, x)?)?;
                }
            }
        }
    }
    let states_are_eigen = states
        .iter()
        .all(|s| eig.iter().flatten().any(|e| e.equal_up_to_phase(s)));
    let three_by_two = observables.len() == 3 && eigen_counts.iter().all(|&c| c == 2);
    Ok(MuqtReport {
        objects,
        alike,
        mutually_unbiased,
        states_are_eigen,
        three_by_two,
        eigen_counts,
        phase_groups,
    })
}

pub fn verify_muqt<S: Scalar>(t: &Theory<S>) -> Result<MuqtReport> {
    verify_muqt_parts(&t.observables, &t.states.states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_are_muqts() {
        let s = Theory::<CycloScalar>::build().unwrap();
        let r = verify_muqt(&s).unwrap();
        assert!(r.is_muqt(), "{r:?}");
        assert_eq!(r.phase_groups, vec![Some(IsoClass::Z4); 3]);
        let p = Theory::<BoolScalar>::build().unwrap();
        let r = verify_muqt(&p).unwrap();
        assert!(r.is_muqt(), "{r:?}");
        assert_eq!(r.phase_groups, vec![Some(IsoClass::Z2xZ2); 3]);
        assert!(p.catalog().unwrap().is_partitioned());
    }

    #[test]
    fn removing_an_observable_fails_condition_five() {
        let p = Theory::<BoolScalar>::build().unwrap();
        let r = verify_muqt_parts(&p.observables[..2], &p.states.states).unwrap();
        assert!(!r.three_by_two);
        assert!(r.failures().contains(&5));
        assert!(!r.states_are_eigen);
    }
}

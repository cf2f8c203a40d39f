// SPDX-License-Identifier: Apache-2.0

use super::states::{conjugate_of, multiply, unbiased_states};
use super::Observable;
use crate::cat_core::Morphism;
use crate::error::{Error, Result};
use crate::ghz::{AbelianGroupSpec, IsoClass};
use crate::scalar::Scalar;

/// The unbiased states of an observable under `⊙`, compared up to phase.
#[derive(Clone, Debug)]
pub struct PhaseGroup<S> {
    /// Length-√dim unbiased states; `elements[identity]` is exactly `ε†`.
    pub elements: Vec<Morphism<S>>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub iso: IsoClass,
}

impl<S: Scalar> PhaseGroup<S> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn spec(&self) -> AbelianGroupSpec {
        let names = (0..self.order()).map(|i| format!("ψ{i}")).collect();
        AbelianGroupSpec::new(names, self.table.clone()).expect("validated at construction")
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.spec().inverse(a)
    }

    /// Index of the element equal to `s` up to phase.
    pub fn index_of(&self, s: &Morphism<S>) -> Option<usize> {
        self.elements.iter().position(|e| e.equal_up_to_phase(s))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<_> = self.elements.iter().map(Morphism::to_json).collect();
        serde_json::json!({
            "elements": elements,
            "identity": self.identity,
            "table": self.table,
            "iso": self.iso.to_string(),
        })
    }
}

/// Builds the phase group from the catalog states unbiased for `obs`; the
/// element equal to `ε†` up to phase is replaced by `ε†` and placed first.
pub fn phase_group<S: Scalar>(obs: &Observable<S>, catalog: &[Morphism<S>]) -> Result<PhaseGroup<S>> {
    let mut elements = unbiased_states(obs, catalog)?;
    let unit = obs.unit_state();
    let id = elements
        .iter()
        .position(|e| e.equal_up_to_phase(&unit))
        .ok_or_else(|| Error::PhaseGroupClosure("ε† is not among the unbiased states".into()))?;
    elements.remove(id);
    elements.insert(0, unit);
    let n = elements.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = multiply(obs, &elements[a], &elements[b])?;
            table[a][b] = elements
                .iter()
                .position(|e| e.equal_up_to_phase(&p))
                .ok_or_else(|| Error::PhaseGroupClosure(format!("element {a} ⊙ element {b} left the set")))?;
        }
    }
    let names = (0..n).map(|i| format!("ψ{i}")).collect();
    let spec = AbelianGroupSpec::new(names, table.clone())
        .map_err(|e| Error::PhaseGroupClosure(e.to_string()))?;
    Ok(PhaseGroup {
        elements,
        table,
        identity: spec.identity,
        iso: spec.iso_class(),
    })
}

/// Whether the group inverse of each element is its conjugate, up to phase.
pub fn inverses_are_conjugates<S: Scalar>(obs: &Observable<S>, pg: &PhaseGroup<S>) -> Result<bool> {
    for (a, e) in pg.elements.iter().enumerate() {
        let inv = &pg.elements[pg.inverse(a)];
        if !conjugate_of(obs, e)?.equal_up_to_phase(inv) {
            return Ok(false);
        }
    }
    Ok(true)
}

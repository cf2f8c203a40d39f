// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::TheoryBinding;
use crate::cat_core::Morphism;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default depth bound for state enumeration.
pub const DEFAULT_DEPTH_BOUND: usize = 12;

/// States of `Q^⊗arity` reachable from `(ε†/√dim)^⊗arity`.
#[derive(Clone, Debug)]
pub struct StateSpace<S> {
    pub arity: u32,
    /// Phase-canonical, sorted.
    pub states: Vec<Morphism<S>>,
    /// Gate sequence producing each state, applied left to right.
    pub provenance: Vec<String>,
    pub fixpoint: bool,
    /// BFS layers expanded.
    pub depth: usize,
}

impl<S: Scalar> StateSpace<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn require_fixpoint(self) -> Result<Self> {
        if self.fixpoint {
            Ok(self)
        } else {
            Err(Error::Enumeration(format!(
                "arity {}: depth bound {} reached with {} states and a nonempty frontier",
                self.arity,
                self.depth,
                self.states.len()
            )))
        }
    }

    pub fn index_of(&self, s: &Morphism<S>) -> Option<usize> {
        self.states.binary_search(&s.canonical_phase()).ok()
    }

    pub fn contains(&self, s: &Morphism<S>) -> bool {
        self.index_of(s).is_some()
    }

    /// Whether `s` equals `a ⊗ b` up to phase for states of `singles`.
    pub fn is_product(s: &Morphism<S>, singles: &StateSpace<S>) -> bool {
        singles
            .states
            .iter()
            .any(|a| singles.states.iter().any(|b| a.tensor(b).equal_up_to_phase(s)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let states: Vec<_> = self
            .states
            .iter()
            .zip(&self.provenance)
            .map(|(s, p)| serde_json::json!({ "state": s.to_json(), "circuit": p }))
            .collect();
        serde_json::json!({
            "arity": self.arity,
            "count": self.states.len(),
            "fixpoint": self.fixpoint,
            "depth": self.depth,
            "states": states,
        })
    }
}

struct Gate<S> {
    label: String,
    matrix: Morphism<S>,
    offset: u32,
}

fn gates<S: Scalar>(t: &TheoryBinding<S>, n: u32) -> Result<Vec<Gate<S>>> {
    let mut out = Vec::new();
    for w in 0..n {
        for (k, u) in t.singles.iter().enumerate() {
            out.push(Gate {
                label: format!("g{k}@{w}"),
                matrix: u.clone(),
                offset: w,
            });
        }
    }
    let q = t.object(1);
    let swap = Morphism::swap(q, q);
    let reversed = swap.compose(&t.entangler)?.compose(&swap)?;
    for w in 0..n.saturating_sub(1) {
        out.push(Gate {
            label: format!("cx@{w},{}", w + 1),
            matrix: t.entangler.clone(),
            offset: w,
        });
        out.push(Gate {
            label: format!("cx@{},{w}", w + 1),
            matrix: reversed.clone(),
            offset: w,
        });
        out.push(Gate {
            label: format!("sw@{w},{}", w + 1),
            matrix: swap.clone(),
            offset: w,
        });
    }
    Ok(out)
}

/// Breadth-first closure under every single-system element on each wire and
/// the entangler (both orientations) and swap on adjacent wires. States are
/// deduplicated up to phase. Frontier expansion runs in parallel; insertion
/// is sequential in frontier order, so the output does not depend on
/// scheduling.
pub fn enumerate_states<S: Scalar>(t: &TheoryBinding<S>, arity: u32, depth_bound: usize) -> Result<StateSpace<S>> {
    if !(1..=3).contains(&arity) {
        return Err(Error::Enumeration(format!("arity {arity} outside 1..=3")));
    }
    let unit = t.normalized_unit()?;
    let start = (1..arity).fold(unit.clone(), |acc, _| acc.tensor(&unit)).canonical_phase();
    let gates = gates(t, arity)?;
    let mut seen: BTreeMap<Morphism<S>, String> = BTreeMap::from([(start.clone(), String::new())]);
    let mut frontier = vec![start];
    let mut depth = 0;
    while !frontier.is_empty() && depth < depth_bound {
        let next: Vec<Vec<(Morphism<S>, usize)>> = frontier
            .par_iter()
            .map(|s| {
                gates
                    .iter()
                    .enumerate()
                    .map(|(gi, g)| Ok((s.apply_local(&g.matrix, g.offset)?.canonical_phase(), gi)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut fresh = Vec::new();
        for (parent, children) in frontier.iter().zip(next) {
            for (child, gi) in children {
                if !seen.contains_key(&child) {
                    let path = match seen[parent].as_str() {
                        "" => gates[gi].label.clone(),
                        p => format!("{p} {}", gates[gi].label),
                    };
                    seen.insert(child.clone(), path);
                    fresh.push(child);
                }
            }
        }
        frontier = fresh;
        depth += 1;
    }
    let fixpoint = frontier.is_empty();
    let (states, provenance) = seen.into_iter().unzip();
    Ok(StateSpace {
        arity,
        states,
        provenance,
        fixpoint,
        depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{spek, stab};

    #[test]
    fn stab_counts() {
        let t = stab().unwrap();
        let one = enumerate_states(&t, 1, DEFAULT_DEPTH_BOUND).unwrap().require_fixpoint().unwrap();
        assert_eq!(one.len(), 6);
        let two = enumerate_states(&t, 2, DEFAULT_DEPTH_BOUND).unwrap().require_fixpoint().unwrap();
        assert_eq!(two.len(), 60);
        let products = two.states.iter().filter(|s| StateSpace::is_product(s, &one)).count();
        assert_eq!(products, 36);
    }

    #[test]
    fn spek_counts() {
        let t = spek().unwrap();
        let one = enumerate_states(&t, 1, DEFAULT_DEPTH_BOUND).unwrap().require_fixpoint().unwrap();
        assert_eq!(one.len(), 6);
        assert!(one.states.iter().all(|s| s.entries().iter().filter(|b| b.0).count() == 2));
        let two = enumerate_states(&t, 2, DEFAULT_DEPTH_BOUND).unwrap().require_fixpoint().unwrap();
        assert_eq!(two.len(), 60);
        let products = two.states.iter().filter(|s| StateSpace::is_product(s, &one)).count();
        assert_eq!(products, 36);
    }

    #[test]
    fn depth_bound_reported() {
        let t = stab().unwrap();
        let s = enumerate_states(&t, 2, 1).unwrap();
        assert!(!s.fixpoint);
        assert!(s.require_fixpoint().is_err());
        assert!(enumerate_states(&t, 4, 12).is_err());
    }

    #[test]
    fn closed_under_gates() {
        let t = stab().unwrap();
        let two = enumerate_states(&t, 2, DEFAULT_DEPTH_BOUND).unwrap();
        for s in &two.states {
            for g in gates(&t, 2).unwrap() {
                assert!(two.contains(&s.apply_local(&g.matrix, g.offset).unwrap()));
            }
        }
    }
}

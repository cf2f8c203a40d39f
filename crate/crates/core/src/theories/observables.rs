// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{enumerate_states, TheoryBinding, DEFAULT_DEPTH_BOUND};
use crate::cat_core::{Morphism, TheoryObject};
use crate::error::{Error, Result};
use crate::frobenius::{check_observable, eigenstates, eigenstates_direct, Observable};
use crate::ghz::AbelianGroupSpec;
use crate::scalar::{BoolScalar, CycloScalar, Scalar};

/// The three labels, in output order.
pub const OBSERVABLE_LABELS: [&str; 3] = ["Z", "X", "Y"];

/// Orders observables as `[Z, X, Y]`: `Z` is the generating observable, `X`
/// has the normalized `ε_Z†` among its eigenstates.
fn label<S: Scalar>(t: &TheoryBinding<S>, found: Vec<Observable<S>>, states: &[Morphism<S>]) -> Result<Vec<Observable<S>>> {
    if found.len() != 3 {
        return Err(Error::Enumeration(format!("{}: found {} observables, expected 3", t.name, found.len())));
    }
    let unit = t.normalized_unit()?;
    let mut z = None;
    let mut x = None;
    let mut rest = Vec::new();
    for o in found {
        if o.delta == t.observable.delta && o.epsilon == t.observable.epsilon {
            z = Some(o);
        } else if eigenstates(&o, states)?.iter().any(|e| e.equal_up_to_phase(&unit)) {
            x = Some(o);
        } else {
            rest.push(o);
        }
    }
    match (z, x, rest.pop()) {
        (Some(z), Some(x), Some(y)) => Ok([z, x, y]
            .into_iter()
            .zip(OBSERVABLE_LABELS)
            .map(|(mut o, l)| {
                o.label = l.into();
                o
            })
            .collect()),
        _ => Err(Error::Enumeration(format!("{}: could not label observables as Z, X, Y", t.name))),
    }
}

/// Copier of an orthonormal basis: `δ = Σ |xx⟩⟨x|`, `ε = Σ ⟨x|`.
fn basis_copier<S: Scalar>(basis: &[&Morphism<S>]) -> Result<(Morphism<S>, Morphism<S>)> {
    let q = basis[0].cod();
    let mut delta = Morphism::zero(q, q.with_power(2));
    let mut epsilon = Morphism::zero(q, q.with_power(0));
    for x in basis {
        delta = delta.add(&x.tensor(x).compose(&x.dagger())?)?;
        epsilon = epsilon.add(&x.dagger())?;
    }
    Ok((delta, epsilon))
}

/// Stab: one observable per orthonormal pair among the single-qubit states.
pub fn stab_observables(t: &TheoryBinding<CycloScalar>) -> Result<Vec<Observable<CycloScalar>>> {
    let one = enumerate_states(t, 1, DEFAULT_DEPTH_BOUND)?.require_fixpoint()?;
    let mut found = Vec::new();
    for (a, b) in one.states.iter().tuple_combinations() {
        if a.dagger().compose(b)?.is_zero() {
            let (delta, epsilon) = basis_copier(&[a, b])?;
            found.push(Observable::validated("", delta, epsilon)?);
        }
    }
    label(t, found, &one.states)
}

/// Set partitions of `0..n`, blocks in increasing order.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for x in 0..n {
        let mut next = Vec::new();
        for p in out {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p;
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

fn abelian_groups(order: usize) -> Vec<AbelianGroupSpec> {
    match order {
        4 => vec![AbelianGroupSpec::cyclic(4), AbelianGroupSpec::klein()],
        n => vec![AbelianGroupSpec::cyclic(n)],
    }
}

/// Relations `δ` that are the converse of an abelian group multiplication on
/// each block of a partition of `0..d`, with `ε` the set of block identities.
/// Deduplicated; base sets up to size 4.
pub fn group_block_candidates(d: usize) -> Vec<(Morphism<BoolScalar>, Morphism<BoolScalar>)> {
    let q = TheoryObject::new(1, d);
    let mut out = BTreeSet::new();
    for partition in set_partitions(d) {
        // Per block: every (group, labelling) as a map element → group index.
        let options: Vec<Vec<(AbelianGroupSpec, Vec<usize>)>> = partition
            .iter()
            .map(|block| {
                abelian_groups(block.len())
                    .into_iter()
                    .flat_map(|g| (0..block.len()).permutations(block.len()).map(move |l| (g.clone(), l)))
                    .collect()
            })
            .collect();
        for choice in options.iter().multi_cartesian_product() {
            let mut delta = Morphism::zero(q, q.with_power(2));
            let mut epsilon = Morphism::zero(q, q.with_power(0));
            let mut entries = delta.entries().to_vec();
            let mut eps = epsilon.entries().to_vec();
            for (block, (g, labels)) in partition.iter().zip(choice) {
                let elem_of = |gi: usize| block[labels.iter().position(|&l| l == gi).expect("bijection")];
                for (&a, &la) in block.iter().zip(labels.iter()) {
                    for (&b, &lb) in block.iter().zip(labels.iter()) {
                        let c = elem_of(g.mul(la, lb));
                        entries[(a * d + b) * d + c] = BoolScalar(true);
                    }
                }
                eps[elem_of(g.identity)] = BoolScalar(true);
            }
            delta = Morphism::new(q, q.with_power(2), entries).expect("shape");
            epsilon = Morphism::new(q, q.with_power(0), eps).expect("shape");
            out.insert((delta, epsilon));
        }
    }
    out.into_iter().collect()
}

/// Structured enumeration: group-block candidates passing every axiom.
pub fn relational_observables_structured(d: usize) -> Result<Vec<(Morphism<BoolScalar>, Morphism<BoolScalar>)>> {
    let mut out = Vec::new();
    for (delta, epsilon) in group_block_candidates(d) {
        if check_observable(&delta, &epsilon)?.all_pass() {
            out.push((delta, epsilon));
        }
    }
    Ok(out)
}

/// Exhaustive enumeration over every relation `δ ⊆ (d×d)×d` and subset `ε`.
pub fn relational_observables_brute_force(d: usize) -> Result<Vec<(Morphism<BoolScalar>, Morphism<BoolScalar>)>> {
    if d > 2 {
        return Err(Error::Enumeration(format!("brute force over size {d} is out of reach")));
    }
    let q = TheoryObject::new(1, d);
    let bits = d * d * d;
    let mut out = Vec::new();
    for dm in 0u64..1 << bits {
        let delta = Morphism::new(q, q.with_power(2), (0..bits).map(|i| BoolScalar(dm >> i & 1 == 1)).collect())?;
        for em in 0u64..1 << d {
            let epsilon = Morphism::new(q, q.with_power(0), (0..d).map(|i| BoolScalar(em >> i & 1 == 1)).collect())?;
            if check_observable(&delta, &epsilon)?.all_pass() {
                out.push((delta.clone(), epsilon));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Spek: group-block candidates that pass every axiom, have exactly two
/// eigenstates, keep eigenstates and `ε†` within the state space, and whose
/// bent form `(1 ⊗ δ) ∘ δ_Z ∘ ε_Z†` is a three-system state. Candidates with
/// the same eigenstate pair are identified; the one with the smallest
/// identity set represents them.
pub fn spek_observables(t: &TheoryBinding<BoolScalar>) -> Result<Vec<Observable<BoolScalar>>> {
    let one = enumerate_states(t, 1, DEFAULT_DEPTH_BOUND)?.require_fixpoint()?;
    let three = enumerate_states(t, 3, DEFAULT_DEPTH_BOUND)?.require_fixpoint()?;
    let cap = t.observable.eta();
    let mut by_pair: BTreeMap<Vec<Morphism<BoolScalar>>, Observable<BoolScalar>> = BTreeMap::new();
    for (delta, epsilon) in group_block_candidates(t.base_dim) {
        if !check_observable(&delta, &epsilon)?.all_pass() {
            continue;
        }
        let obs = Observable::new("", delta, epsilon)?;
        let Some(eig) = eigenstates_direct(&obs)? else { continue };
        if eig.len() != 2 || !eig.iter().all(|e| one.contains(e)) || !one.contains(&obs.unit_state()) {
            continue;
        }
        if !three.contains(&cap.apply_local(&obs.delta, 1)?) {
            continue;
        }
        let ids: Vec<usize> = (0..t.base_dim).filter(|&i| obs.epsilon.entries()[i].0).collect();
        match by_pair.get(&eig) {
            Some(prev) if (0..t.base_dim).filter(|&i| prev.epsilon.entries()[i].0).collect::<Vec<_>>() <= ids => {}
            _ => {
                by_pair.insert(eig, obs);
            }
        }
    }
    label(t, by_pair.into_values().collect(), &one.states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{spek, stab};

    #[test]
    fn partitions_are_bell_numbers() {
        let counts: Vec<usize> = (0..5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
    }

    #[test]
    fn size_two_oracle() {
        let structured = relational_observables_structured(2).unwrap();
        let brute = relational_observables_brute_force(2).unwrap();
        assert_eq!(structured.len(), 3);
        assert_eq!(structured, brute);
    }

    #[test]
    fn stab_three() {
        let t = stab().unwrap();
        let obs = stab_observables(&t).unwrap();
        let labels: Vec<&str> = obs.iter().map(|o| o.label.as_str()).collect();
        assert_eq!(labels, OBSERVABLE_LABELS);
        assert_eq!(obs[0].delta, t.observable.delta);
    }

    #[test]
    fn spek_three() {
        let t = spek().unwrap();
        let obs = spek_observables(&t).unwrap();
        let pairs: Vec<Vec<Vec<usize>>> = obs
            .iter()
            .map(|o| {
                eigenstates_direct(o)
                    .unwrap()
                    .unwrap()
                    .iter()
                    .map(|e| (0..4).filter(|&i| e.entries()[i].0).collect::<Vec<_>>())
                    .sorted()
                    .collect()
            })
            .collect();
        assert_eq!(
            pairs,
            vec![
                vec![vec![0, 1], vec![2, 3]],
                vec![vec![0, 2], vec![1, 3]],
                vec![vec![0, 3], vec![1, 2]],
            ]
        );
    }
}

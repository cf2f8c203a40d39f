// SPDX-License-Identifier: Apache-2.0

use phaselab_core::ghz::{correlation_triples, ghz_from_observable, CanonicalStates, StateKind};
use phaselab_core::report::ghz_tables;
use phaselab_core::theories::{Concrete, Theory};
use phaselab_core::{BoolScalar, CycloScalar, Morphism, Scalar};

/// `(x_i ⊗ x_j ⊗ 1)† ∘ Ψ`.
fn third_slot<S: Scalar>(psi: &Morphism<S>, xi: &Morphism<S>, xj: &Morphism<S>) -> Morphism<S> {
    let q = xi.cod();
    let id = Morphism::identity(q);
    xi.tensor(xj).tensor(&id).dagger().compose(psi).unwrap()
}

fn table_agrees_with_matrices<S: Concrete>() {
    let t = Theory::<S>::build().unwrap();
    let z = &t.observables[0];
    let g = ghz_from_observable(z).unwrap();
    let canon = CanonicalStates::build(z, &t.states.states, &t.observables[1..]).unwrap();
    let ct = correlation_triples(&g, &canon).unwrap();
    let x = &canon.states;

    for &[i, j, k] in ct.triples.keys() {
        let slot = third_slot(&g.psi, &x[i], &x[j]);
        let w = x[k].proportionality(&slot);
        assert!(w.is_some_and(|w| !w.is_zero()), "{} {} {}", ct.names[i], ct.names[j], ct.names[k]);
    }
    for &[i, j] in &ct.vanishing {
        assert!(third_slot(&g.psi, &x[i], &x[j]).is_zero());
    }
    for &[i, j, k] in &ct.forbidden {
        let amp = x[i].tensor(&x[j]).tensor(&x[k]).dagger().compose(&g.psi).unwrap();
        assert!(amp.is_zero(), "forbidden {} {} {} has weight", ct.names[i], ct.names[j], ct.names[k]);
    }
}

#[test]
fn stab_table_agrees_with_matrices() {
    table_agrees_with_matrices::<CycloScalar>();
}

#[test]
fn spek_table_agrees_with_matrices() {
    table_agrees_with_matrices::<BoolScalar>();
}

fn shape<S: Concrete>() {
    let t = Theory::<S>::build().unwrap();
    let (ct, sym, spec) = ghz_tables(&t).unwrap();
    assert!(ct.is_symmetric());
    assert!(ct.is_permutation_closed());
    assert_eq!(ct.vanishing.iter().copied().collect::<Vec<_>>(), vec![[0, 1], [1, 0]]);

    // Each eigenstate copies itself; a group element leaves it unchanged.
    for e in 0..2 {
        assert!(ct.contains([e, e, e]));
        for g in ct.group_indices() {
            assert!(ct.contains([e, g, e]));
            assert!(ct.contains([g, e, e]));
        }
    }
    assert!(ct.triples.keys().all(|t| !(t.contains(&0) && t.contains(&1))));

    // Identity with g leaves the conjugate of g in the third slot.
    let idx = |el: usize| ct.kinds.iter().position(|k| *k == StateKind::Group(el)).unwrap();
    for el in 0..spec.order() {
        assert!(ct.contains([idx(spec.identity), idx(el), idx(spec.inverse(el))]));
    }
    assert_eq!(ct.triples.len(), sym.triples.len());
    assert_eq!(ct.forbidden.len(), sym.forbidden.len());
}

#[test]
fn stab_table_shape() {
    shape::<CycloScalar>();
}

#[test]
fn spek_table_shape() {
    shape::<BoolScalar>();
}

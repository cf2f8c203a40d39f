// SPDX-License-Identifier: Apache-2.0

use phaselab_core::lhv::{
    born_table, lhv_feasibility, lhv_feasibility_instance, possibilistic_lhv, verify_certificate, BornRule, LhvInstance,
    LhvOptions, Verdict, Witness,
};
use phaselab_core::report::ghz_born_table;
use phaselab_core::theories::{Concrete, Theory};
use phaselab_core::{BornTable, BoolScalar, CycloScalar, Morphism};

const SYMMETRIC: LhvOptions = LhvOptions { symmetry: true };

/// The Born table of `x ⊗ x ⊗ x` for the first eigenstate of `Z`.
fn product_table<S: Concrete + BornRule>() -> BornTable {
    let t = Theory::<S>::build().unwrap();
    let bases = t.eigenbases().unwrap();
    let x: &Morphism<S> = &bases[0][0];
    let psi = x.tensor(x).tensor(x);
    let labels: Vec<String> = t.observables.iter().map(|o| o.label.clone()).collect();
    born_table(&psi, &labels, &bases).unwrap()
}

fn feasible(table: &BornTable, opts: LhvOptions) -> bool {
    let cert = if table.is_probabilistic() { lhv_feasibility(table, opts) } else { possibilistic_lhv(table) }.unwrap();
    assert!(cert.verified);
    cert.verdict == Verdict::Feasible
}

#[test]
fn product_states_are_local() {
    let stab = product_table::<CycloScalar>();
    assert!(stab.is_probabilistic());
    assert!(feasible(&stab, LhvOptions::default()));
    assert!(feasible(&stab, SYMMETRIC));
    assert!(feasible(&stab.to_possibilistic(), LhvOptions::default()));

    let spek = product_table::<BoolScalar>();
    assert!(spek.is_possibilistic());
    assert!(feasible(&spek, LhvOptions::default()));
    assert!(feasible(&spek.to_uniform_probabilistic(), LhvOptions::default()));
}

#[test]
fn dropping_rows_keeps_feasibility() {
    let inst = LhvInstance::from_table(&product_table::<CycloScalar>()).unwrap();
    let every_third: Vec<usize> = (0..inst.rows.len()).step_by(3).collect();
    let first_contexts: Vec<usize> = (0..inst.rows.len() / 2).collect();
    for drop in [every_third, first_contexts] {
        let cert = lhv_feasibility_instance(&inst.without_rows(&drop), LhvOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Feasible, "dropping {drop:?}");
    }
}

#[test]
fn stab_ghz_is_nonlocal_in_both_modes() {
    let t = Theory::<CycloScalar>::build().unwrap();
    let table = ghz_born_table(&t).unwrap();
    for opts in [LhvOptions::default(), SYMMETRIC] {
        let cert = lhv_feasibility(&table, opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Infeasible);
        assert!(matches!(cert.witness, Witness::Farkas(_)));
        assert!(verify_certificate(&LhvInstance::from_table(&table).unwrap(), &cert));
    }
    let poss = possibilistic_lhv(&table.to_possibilistic()).unwrap();
    assert_eq!(poss.verdict, Verdict::Infeasible);
    assert!(poss.verified);
}

#[test]
fn stab_ghz_parities_are_odd_in_sum() {
    // Relabelling the outcomes of one observable flips the parity of an even
    // number of these contexts, so the sum is label-independent.
    let t = Theory::<CycloScalar>::build().unwrap();
    let table = ghz_born_table(&t).unwrap();
    let mut total = 0;
    for ctx in [["X", "X", "X"], ["X", "Y", "Y"], ["Y", "X", "Y"], ["Y", "Y", "X"]] {
        let c = table.context_index(&ctx).unwrap();
        let parities: Vec<u32> = (0..table.outcome_count())
            .filter(|&o| table.weights[c][o].is_possible())
            .map(|o| (o as u32).count_ones() % 2)
            .collect();
        assert!(parities.windows(2).all(|w| w[0] == w[1]), "{ctx:?} has mixed parity");
        total += parities[0];
    }
    assert_eq!(total % 2, 1);
}

#[test]
fn spek_ghz_is_possibilistically_local() {
    let t = Theory::<BoolScalar>::build().unwrap();
    let table = ghz_born_table(&t).unwrap();
    assert!(feasible(&table, LhvOptions::default()));
}

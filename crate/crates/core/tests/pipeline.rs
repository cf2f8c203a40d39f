// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use phaselab_core::frobenius::phase_group;
use phaselab_core::ghz::{
    correlation_triples, correlations_from_group, ghz_from_observable, tables_isomorphic, verify_ghz, CanonicalStates,
};
use phaselab_core::lhv::{
    born_table, lhv_feasibility, mermin_certificate, possibilistic_lhv, LhvOptions, Verdict,
};
use phaselab_core::theories::{Concrete, Theory};
use phaselab_core::{BoolScalar, CycloScalar};

fn pipeline<S: Concrete + phaselab_core::lhv::BornRule>() -> (Verdict, bool, bool) {
    let t = Theory::<S>::build().unwrap();
    let z = &t.observables[0];
    let g = ghz_from_observable(z).unwrap();
    assert!(verify_ghz(&g).unwrap().all_pass());
    let canon = CanonicalStates::build(z, &t.states.states, &t.observables[1..]).unwrap();
    let ct = correlation_triples(&g, &canon).unwrap();
    let pg = phase_group(z, &t.states.states).unwrap();
    let pairs: Vec<[usize; 2]> = canon.eigen_pairs[1..].iter().map(|p| [p[0] - 2, p[1] - 2]).collect();
    let sym = correlations_from_group(&pg.spec(), &pairs).unwrap();
    let iso = tables_isomorphic(&ct, &sym).is_some();
    println!("{}: triples {} forbidden {} vanishing {}", S::NAME, ct.triples.len(), ct.forbidden.len(), ct.vanishing.len());
    let mermin = mermin_certificate(&ct, &pg.spec()).unwrap().is_some();
    let labels: Vec<String> = t.observables.iter().map(|o| o.label.clone()).collect();
    let bt = born_table(&g.psi, &labels, &t.eigenbases().unwrap()).unwrap();
    let start = Instant::now();
    let verdict = if bt.is_probabilistic() {
        lhv_feasibility(&bt, LhvOptions::default()).unwrap().verdict
    } else {
        assert_eq!(possibilistic_lhv(&bt).unwrap().verdict, Verdict::Feasible);
        lhv_feasibility(&bt.to_uniform_probabilistic(), LhvOptions::default()).unwrap().verdict
    };
    println!("{}: lp {:?} in {:?}", S::NAME, verdict, start.elapsed());
    (verdict, iso, mermin)
}

#[test]
fn stab_pipeline() {
    assert_eq!(pipeline::<CycloScalar>(), (Verdict::Infeasible, true, true));
}

#[test]
fn spek_pipeline() {
    assert_eq!(pipeline::<BoolScalar>(), (Verdict::Feasible, true, false));
}

#[test]
fn full_report() {
    use phaselab_core::report::{run_full_report, ReportOptions};
    let start = Instant::now();
    let opts = ReportOptions { spider_trials: 3, ..ReportOptions::default() };
    let r = run_full_report(&opts).unwrap();
    println!("{}", r.to_text());
    println!("report in {:?}", start.elapsed());
    r.ensure_pass().unwrap();
    let again = run_full_report(&opts).unwrap();
    assert_eq!(r.to_json().to_string(), again.to_json().to_string());
}

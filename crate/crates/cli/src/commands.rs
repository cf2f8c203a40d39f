// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use phaselab_core::frobenius::{check_observable, inverses_are_conjugates, phase_group as build_phase_group, spider_property_test};
use phaselab_core::ghz::{ghz_from_observable, observable_from_ghz, tables_isomorphic, verify_ghz};
use phaselab_core::lhv::{lhv_feasibility, mermin_certificate, possibilistic_lhv, BornRule, LhvOptions, Verdict};
use phaselab_core::report::{ghz_born_table, ghz_tables, render_text, run_full_report, ReportOptions};
use phaselab_core::theories::{self, enumerate_states, Concrete, Theory, TheoryName};
use phaselab_core::{BoolScalar, CycloScalar, Observable};
use serde_json::json;

use crate::{Global, Mode, Outcome};

const NEGATIVE: u8 = 3;

macro_rules! dispatch {
    ($g:expr, $f:ident($($arg:expr),*)) => {
        match $g.theory {
            TheoryName::Stab => $f::<CycloScalar>($($arg),*),
            TheoryName::Spek => $f::<BoolScalar>($($arg),*),
        }
    };
}

fn ok(value: serde_json::Value) -> anyhow::Result<Outcome> {
    Ok(Outcome { value, code: 0 })
}

fn find<'a, S>(t: &'a Theory<S>, label: &str) -> anyhow::Result<&'a Observable<S>>
where
    S: phaselab_core::Scalar,
{
    t.observable(label).ok_or_else(|| {
        let known: Vec<&str> = t.observables.iter().map(|o| o.label.as_str()).collect();
        anyhow!("unknown observable `{label}` (expected one of {})", known.join(", "))
    })
}

pub fn report(g: &Global, out: Option<&Path>, timing: bool, spider_trials: usize, arity_three: bool) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let opts = ReportOptions { seed: g.seed, spider_trials, arity_three, ..ReportOptions::default() };
    let mut r = run_full_report(&opts)?;
    if timing {
        r.runtime = Some(start.elapsed());
    }
    let value = r.to_json();
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        let text = path.with_extension("txt");
        std::fs::write(&text, render_text(&value)).with_context(|| format!("writing {}", text.display()))?;
    }
    if let Err(e) = r.ensure_pass() {
        eprintln!("error: {e}");
        return Ok(Outcome { value, code: 1 });
    }
    ok(value)
}

pub fn theory_build(g: &Global) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>() -> anyhow::Result<Outcome> {
        let t = S::binding()?;
        let axioms = check_observable(&t.observable.delta, &t.observable.epsilon)?;
        let mut v = t.to_json();
        v["observable_axioms"] = axioms.to_json();
        ok(v)
    }
    dispatch!(g, go())
}

pub fn theory_states(g: &Global, arity: u32, depth: usize) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>(arity: u32, depth: usize) -> anyhow::Result<Outcome> {
        let space = enumerate_states(&S::binding()?, arity, depth)?;
        let code = if space.fixpoint { 0 } else { 1 };
        if !space.fixpoint {
            eprintln!("error: depth bound {depth} reached before a fixpoint");
        }
        Ok(Outcome { value: space.to_json(), code })
    }
    dispatch!(g, go(arity, depth))
}

pub fn theory_observables(g: &Global) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>() -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let bases = t.eigenbases()?;
        let list: Vec<_> = t
            .observables
            .iter()
            .zip(bases)
            .map(|(o, b)| {
                let mut v = o.to_json();
                v["eigenstates"] = json!(b.iter().map(|e| e.to_json()).collect::<Vec<_>>());
                v
            })
            .collect();
        ok(json!({ "theory": S::NAME.as_str(), "count": list.len(), "observables": list }))
    }
    dispatch!(g, go())
}

pub fn verify_muqt(g: &Global) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>() -> anyhow::Result<Outcome> {
        let r = theories::verify_muqt(&Theory::<S>::build()?)?;
        Ok(Outcome { code: if r.is_muqt() { 0 } else { NEGATIVE }, value: r.to_json() })
    }
    dispatch!(g, go())
}

pub fn observables(g: &Global) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>() -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let mut axioms = serde_json::Map::new();
        for o in &t.observables {
            axioms.insert(o.label.clone(), check_observable(&o.delta, &o.epsilon)?.to_json());
        }
        let catalog = t.catalog()?;
        ok(json!({
            "axioms": axioms,
            "catalog": catalog.to_json(),
            "partitioned": catalog.is_partitioned(),
        }))
    }
    dispatch!(g, go())
}

pub fn phase_group(g: &Global, label: &str) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>(label: &str) -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let o = find(&t, label)?;
        let pg = build_phase_group(o, &t.states.states)?;
        let mut v = pg.to_json();
        v["observable"] = json!(label);
        v["inverses_are_conjugates"] = json!(inverses_are_conjugates(o, &pg)?);
        ok(v)
    }
    dispatch!(g, go(label))
}

pub fn ghz(g: &Global, label: &str) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>(label: &str) -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let o = find(&t, label)?;
        let ghz = ghz_from_observable(o)?;
        let axioms = verify_ghz(&ghz)?;
        let round_trip = observable_from_ghz(&ghz, label).map(|b| b == *o).unwrap_or(false);
        let mut v = ghz.to_json();
        v["observable"] = json!(label);
        v["axioms"] = axioms.to_json();
        v["round_trip"] = json!(round_trip);
        let code = if axioms.all_pass() && round_trip { 0 } else { 1 };
        Ok(Outcome { value: v, code })
    }
    dispatch!(g, go(label))
}

pub fn correlations(g: &Global) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>() -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let (concrete, symbolic, spec) = ghz_tables(&t)?;
        let map = tables_isomorphic(&concrete, &symbolic);
        ok(json!({
            "phase_group": spec.to_json(),
            "concrete": concrete.to_json(),
            "symbolic": symbolic.to_json(),
            "isomorphism": map,
            "permutation_closed": concrete.is_permutation_closed(),
        }))
    }
    dispatch!(g, go())
}

pub fn lhv(g: &Global, mode: Mode, symmetry: bool) -> anyhow::Result<Outcome> {
    fn go<S: Concrete + BornRule>(mode: Mode, symmetry: bool) -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let table = ghz_born_table(&t)?;
        let (table, lifted) = match (mode, table.is_probabilistic()) {
            (Mode::Prob, true) | (Mode::Poss, false) => (table, false),
            (Mode::Prob, false) => (table.to_uniform_probabilistic(), true),
            (Mode::Poss, true) => (table.to_possibilistic(), true),
        };
        let start = Instant::now();
        let cert = match mode {
            Mode::Prob => lhv_feasibility(&table, LhvOptions { symmetry })?,
            Mode::Poss => {
                if symmetry {
                    bail!("--symmetry applies to probabilistic mode only");
                }
                possibilistic_lhv(&table)?
            }
        };
        let elapsed = start.elapsed();
        eprintln!("solved in {:.3}s", elapsed.as_secs_f64());
        let mut v = cert.to_json();
        v["theory"] = json!(S::NAME.as_str());
        v["mode"] = json!(if mode == Mode::Prob { "prob" } else { "poss" });
        v["converted_table"] = json!(lifted);
        let code = if cert.verdict == Verdict::Feasible { 0 } else { NEGATIVE };
        Ok(Outcome { value: v, code })
    }
    dispatch!(g, go(mode, symmetry))
}

pub fn mermin(g: &Global) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>() -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let (concrete, _, spec) = ghz_tables(&t)?;
        let cert = mermin_certificate(&concrete, &spec)?;
        let code = if cert.is_some() { NEGATIVE } else { 0 };
        let value = json!({
            "theory": S::NAME.as_str(),
            "phase_group": spec.iso_class().to_string(),
            "certificate": cert.as_ref().map(|c| c.to_json()),
            "verified": cert.as_ref().map(|c| c.verify()),
        });
        Ok(Outcome { value, code })
    }
    dispatch!(g, go())
}

pub fn spider_test(g: &Global, trials: usize, arity: u32, label: Option<&str>) -> anyhow::Result<Outcome> {
    fn go<S: Concrete>(seed: u64, trials: usize, arity: u32, label: Option<&str>) -> anyhow::Result<Outcome> {
        let t = Theory::<S>::build()?;
        let chosen: Vec<&Observable<S>> = match label {
            Some(l) => vec![find(&t, l)?],
            None => t.observables.iter().collect(),
        };
        let mut out = serde_json::Map::new();
        let mut passed = true;
        for o in chosen {
            let r = spider_property_test(o, trials, seed, arity)?;
            passed &= r.passed();
            out.insert(o.label.clone(), r.to_json());
        }
        Ok(Outcome { value: json!({ "passed": passed, "observables": out }), code: if passed { 0 } else { 1 } })
    }
    dispatch!(g, go(g.seed, trials, arity, label))
}

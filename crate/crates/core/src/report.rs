// SPDX-License-Identifier: Apache-2.0

//! The end-to-end comparison of both theories.

use std::time::Duration;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frobenius::{phase_group, spider_property_test};
use crate::ghz::{
    correlation_triples, correlations_from_group, ghz_from_observable, observable_from_ghz, tables_isomorphic,
    verify_ghz, CanonicalStates, CorrelationTable,
};
use crate::lhv::{born_table, lhv_feasibility, mermin_certificate, possibilistic_lhv, BornRule, BornTable, LhvOptions};
use crate::scalar::{BoolScalar, CycloScalar};
use crate::theories::{enumerate_states, verify_muqt, Concrete, Theory, TheoryName, DEFAULT_DEPTH_BOUND};

/// Bumped whenever the report layout changes.
pub const REPORT_SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub seed: u64,
    /// Random diagrams per boundary shape in the spider check.
    pub spider_trials: usize,
    pub spider_arity: u32,
    /// Also count three-system states.
    pub arity_three: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            seed: DEFAULT_SEED,
            spider_trials: 20,
            spider_arity: 3,
            arity_three: true,
        }
    }
}

/// One named comparison between a computed and an expected value.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub expected: Value,
    pub actual: Value,
}

impl CheckResult {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }

    pub fn to_json(&self) -> Value {
        json!({ "id": self.id, "expected": self.expected, "actual": self.actual, "pass": self.pass() })
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub seed: u64,
    pub theories: Vec<(TheoryName, Value)>,
    pub checks: Vec<CheckResult>,
    /// Wall-clock time, reported only when set.
    pub runtime: Option<Duration>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::pass)
    }

    /// The first failing check as an error.
    pub fn ensure_pass(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.pass()) {
            None => Ok(()),
            Some(c) => Err(Error::Check {
                id: c.id.clone(),
                detail: format!("expected {}, got {}", c.expected, c.actual),
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        let theories: serde_json::Map<String, Value> =
            self.theories.iter().map(|(n, v)| (n.as_str().to_string(), v.clone())).collect();
        let mut v = json!({
            "schema": REPORT_SCHEMA,
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.seed,
            "theories": theories,
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
            "all_pass": self.all_pass(),
        });
        if let Some(d) = self.runtime {
            v["runtime_ms"] = json!(d.as_millis() as u64);
        }
        v
    }

    pub fn to_text(&self) -> String {
        render_text(&self.to_json())
    }
}

/// Flattens a JSON value into aligned `path  value` lines.
pub fn render_text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k}{}  {v}\n", " ".repeat(width - k.chars().count())))
        .collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out))
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Values the report is checked against.
pub struct Expected {
    pub states: [usize; 2],
    pub iso: &'static str,
    pub lhv: &'static str,
    pub possibilistic: &'static str,
    pub mermin: bool,
}

pub fn expected(name: TheoryName) -> Expected {
    match name {
        TheoryName::Stab => Expected {
            states: [6, 60],
            iso: "Z4",
            lhv: "infeasible",
            possibilistic: "infeasible",
            mermin: true,
        },
        TheoryName::Spek => Expected {
            states: [6, 60],
            iso: "Z2xZ2",
            lhv: "feasible",
            possibilistic: "feasible",
            mermin: false,
        },
    }
}

/// The GHZ state of `Z`, its correlation table, and the symbolic table of
/// `Z`'s phase group with the other observables' eigenstate pairs.
pub fn ghz_tables<S: Concrete>(t: &Theory<S>) -> Result<(CorrelationTable, CorrelationTable, crate::ghz::AbelianGroupSpec)> {
    let z = &t.observables[0];
    let g = ghz_from_observable(z)?;
    let canon = CanonicalStates::build(z, &t.states.states, &t.observables[1..])?;
    let concrete = correlation_triples(&g, &canon)?;
    let spec = phase_group(z, &t.states.states)?.spec();
    let offset = canon.eigen_pairs[0].len();
    let pairs: Vec<[usize; 2]> = canon.eigen_pairs[1..].iter().map(|p| p.map(|i| i - offset)).collect();
    let symbolic = correlations_from_group(&spec, &pairs)?;
    Ok((concrete, symbolic, spec))
}

/// Born table of `Z`'s GHZ state against all observables.
pub fn ghz_born_table<S: Concrete + BornRule>(t: &Theory<S>) -> Result<BornTable> {
    let g = ghz_from_observable(&t.observables[0])?;
    let labels: Vec<String> = t.observables.iter().map(|o| o.label.clone()).collect();
    born_table(&g.psi, &labels, &t.eigenbases()?)
}

fn theory_block<S: Concrete + BornRule>(opts: &ReportOptions, checks: &mut Vec<CheckResult>) -> Result<Value> {
    let t = Theory::<S>::build()?;
    let name = t.name();
    let exp = expected(name);
    let mut check = |id: &str, expected: Value, actual: Value| {
        checks.push(CheckResult { id: format!("{name}.{id}"), expected, actual });
    };

    let mut counts = serde_json::Map::new();
    let arities: &[u32] = if opts.arity_three { &[1, 2, 3] } else { &[1, 2] };
    for &n in arities {
        let space = enumerate_states(&t.binding, n, DEFAULT_DEPTH_BOUND)?;
        counts.insert(n.to_string(), json!({ "count": space.len(), "fixpoint": space.fixpoint, "depth": space.depth }));
        if n <= 2 {
            check(&format!("states.{n}"), json!(exp.states[n as usize - 1]), json!(space.len()));
            check(&format!("states.{n}.fixpoint"), json!(true), json!(space.fixpoint));
        }
    }

    let muqt = verify_muqt(&t)?;
    check("observables", json!(3), json!(t.observables.len()));
    check("muqt", json!(true), json!(muqt.is_muqt()));
    let isos: Vec<String> = muqt.phase_groups.iter().map(|g| g.as_ref().map_or("none".into(), |g| g.to_string())).collect();
    check("phase_groups", json!(vec![exp.iso; 3]), json!(isos));

    let mut ghz = Vec::new();
    let mut spider_ok = true;
    for o in &t.observables {
        let g = ghz_from_observable(o)?;
        let axioms = verify_ghz(&g)?;
        let round_trip = observable_from_ghz(&g, &o.label).map(|back| back == *o).unwrap_or(false);
        let spider = spider_property_test(o, opts.spider_trials, opts.seed, opts.spider_arity)?;
        spider_ok &= spider.passed();
        ghz.push(json!({
            "observable": o.label,
            "axioms": axioms.to_json(),
            "round_trip": round_trip,
            "spider_trials": spider.total_trials(),
            "spider_passed": spider.passed(),
        }));
        check(&format!("ghz.{}", o.label), json!([true, true]), json!([axioms.all_pass(), round_trip]));
    }
    check("spider", json!(true), json!(spider_ok));

    let (concrete, symbolic, spec) = ghz_tables(&t)?;
    let iso = tables_isomorphic(&concrete, &symbolic).is_some();
    check("correlations.determined_by_group", json!(true), json!(iso));
    check("correlations.permutation_closed", json!(true), json!(concrete.is_permutation_closed()));
    let mermin = mermin_certificate(&concrete, &spec)?;
    check("mermin", json!(exp.mermin), json!(mermin.is_some()));

    let table = ghz_born_table(&t)?;
    let (prob_table, poss_table) = if table.is_probabilistic() {
        (table.clone(), table.to_possibilistic())
    } else {
        (table.to_uniform_probabilistic(), table.clone())
    };
    let lhv = lhv_feasibility(&prob_table, LhvOptions::default())?;
    let poss = possibilistic_lhv(&poss_table)?;
    check("lhv.probabilistic", json!(exp.lhv), json!(lhv.verdict.as_str()));
    check("lhv.probabilistic.verified", json!(true), json!(lhv.verified));
    check("lhv.possibilistic", json!(exp.possibilistic), json!(poss.verdict.as_str()));
    check("lhv.possibilistic.verified", json!(true), json!(poss.verified));

    Ok(json!({
        "scalar_kind": S::KIND.to_string(),
        "state_counts": counts,
        "observable_count": t.observables.len(),
        "muqt": muqt.to_json(),
        "phase_group": spec.iso_class().to_string(),
        "ghz": ghz,
        "correlations": {
            "digest": concrete.digest(),
            "isomorphic_to_group_table": iso,
        },
        "lhv": {
            "probabilistic": lhv.verdict.as_str(),
            "probabilistic_verified": lhv.verified,
            "pivots": lhv.pivots,
            "possibilistic": poss.verdict.as_str(),
            "possibilistic_verified": poss.verified,
        },
        "mermin_certificate": mermin.is_some(),
    }))
}

/// Runs the whole pipeline for both theories. Check failures are recorded
/// in the report; use [`ComparisonReport::ensure_pass`] to turn them into an
/// error.
pub fn run_full_report(opts: &ReportOptions) -> Result<ComparisonReport> {
    let mut checks = Vec::new();
    let stab = theory_block::<CycloScalar>(opts, &mut checks)?;
    let spek = theory_block::<BoolScalar>(opts, &mut checks)?;
    Ok(ComparisonReport {
        seed: opts.seed,
        theories: vec![(TheoryName::Stab, stab), (TheoryName::Spek, spek)],
        checks,
        runtime: None,
    })
}

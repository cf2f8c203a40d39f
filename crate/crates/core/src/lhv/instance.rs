// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::born::{BornTable, BornWeight};
use super::simplex::{phase_one, Feasibility};
use crate::error::{Error, Result};
use crate::scalar::{rational_to_json, Rational};

/// One equality constraint on the hidden-state weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    /// Weight of hidden states inducing `outcome` in `context`.
    Outcome { context: usize, outcome: usize },
    /// Total weight.
    Normalization,
}

/// The feasibility problem for a probabilistic table over the full product
/// of deterministic assignments. Hidden state `ξ` holds the outcome bit of
/// observable `k` at site `s` in bit `s·m + k`.
#[derive(Clone, Debug)]
pub struct LhvInstance {
    pub sites: usize,
    pub observables: usize,
    pub contexts: Vec<Vec<usize>>,
    pub rows: Vec<Row>,
    pub rhs: Vec<Rational>,
}

impl LhvInstance {
    pub fn from_table(table: &BornTable) -> Result<Self> {
        if !table.is_probabilistic() {
            return Err(Error::BornTable("probabilistic mode needs probabilities".into()));
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (c, ws) in table.weights.iter().enumerate() {
            for (o, w) in ws.iter().enumerate() {
                let BornWeight::Probability(p) = w else { unreachable!("checked above") };
                rows.push(Row::Outcome { context: c, outcome: o });
                rhs.push(p.clone());
            }
        }
        rows.push(Row::Normalization);
        rhs.push(Rational::one());
        Ok(LhvInstance {
            sites: table.sites,
            observables: table.observable_count(),
            contexts: table.contexts.clone(),
            rows,
            rhs,
        })
    }

    pub fn hidden_count(&self) -> usize {
        1 << (self.sites * self.observables)
    }

    /// Outcome of `context` under the deterministic assignment `xi`.
    pub fn induced_outcome(&self, xi: usize, context: usize) -> usize {
        induced(self.sites, self.observables, xi, &self.contexts[context])
    }

    pub fn coefficient(&self, row: usize, xi: usize) -> bool {
        match self.rows[row] {
            Row::Outcome { context, outcome } => self.induced_outcome(xi, context) == outcome,
            Row::Normalization => true,
        }
    }

    /// The instance with the listed rows removed.
    pub fn without_rows(&self, drop: &[usize]) -> LhvInstance {
        let keep: Vec<usize> = (0..self.rows.len()).filter(|i| !drop.contains(i)).collect();
        LhvInstance {
            rows: keep.iter().map(|&i| self.rows[i]).collect(),
            rhs: keep.iter().map(|&i| self.rhs[i].clone()).collect(),
            ..self.clone()
        }
    }

    fn dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows.len())
            .map(|r| {
                (0..self.hidden_count())
                    .map(|xi| if self.coefficient(r, xi) { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    }

    /// Site permutations as maps on contexts, outcomes and hidden states.
    fn site_permutations(&self) -> Vec<Vec<usize>> {
        (0..self.sites).permutations(self.sites).collect()
    }

    fn permute_hidden(&self, pi: &[usize], xi: usize) -> usize {
        let m = self.observables;
        let mut out = 0;
        for (s, &ps) in pi.iter().enumerate() {
            out |= ((xi >> (s * m)) & ((1 << m) - 1)) << (ps * m);
        }
        out
    }

    fn permute_row(&self, pi: &[usize], row: Row) -> Option<Row> {
        match row {
            Row::Normalization => Some(Row::Normalization),
            Row::Outcome { context, outcome } => {
                let ctx = &self.contexts[context];
                let mut pc = vec![0; self.sites];
                let mut po = 0;
                for (s, &ps) in pi.iter().enumerate() {
                    pc[ps] = ctx[s];
                    let bit = (outcome >> (self.sites - 1 - s)) & 1;
                    po |= bit << (self.sites - 1 - ps);
                }
                let pcx = self.contexts.iter().position(|c| *c == pc)?;
                Some(Row::Outcome { context: pcx, outcome: po })
            }
        }
    }
}

fn induced(sites: usize, m: usize, xi: usize, ctx: &[usize]) -> usize {
    (0..sites).fold(0, |o, s| (o << 1) | ((xi >> (s * m + ctx[s])) & 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Nonzero weights of a measure on hidden states.
    Measure(BTreeMap<usize, Rational>),
    /// Row weights `w` with `wᵀA ≥ 0` and `wᵀb < 0`.
    Farkas(Vec<Rational>),
    /// Consistent assignments covering every possible outcome.
    Cover(Vec<usize>),
    /// A possible outcome no consistent assignment induces.
    Uncovered { context: usize, outcome: usize, consistent: usize },
}

#[derive(Clone, Debug)]
pub struct LhvCertificate {
    pub verdict: Verdict,
    pub witness: Witness,
    pub pivots: usize,
    /// Result of the solver-independent re-check.
    pub verified: bool,
}

impl LhvCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            Witness::Measure(mu) => serde_json::json!({
                "measure": mu.iter().map(|(xi, p)| serde_json::json!([xi, rational_to_json(p)])).collect::<Vec<_>>()
            }),
            Witness::Farkas(w) => serde_json::json!({
                "farkas": w.iter().map(rational_to_json).collect::<Vec<_>>()
            }),
            Witness::Cover(c) => serde_json::json!({ "cover": c }),
            Witness::Uncovered { context, outcome, consistent } => serde_json::json!({
                "uncovered": { "context": context, "outcome": outcome, "consistent_assignments": consistent }
            }),
        };
        serde_json::json!({
            "verdict": self.verdict.as_str(),
            "verified": self.verified,
            "pivots": self.pivots,
            "witness": witness,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LhvOptions {
    /// Solve over orbits of hidden states under site permutations. The table
    /// must be invariant under them.
    pub symmetry: bool,
}

/// Re-checks a probabilistic certificate by exact arithmetic.
pub fn verify_certificate(inst: &LhvInstance, cert: &LhvCertificate) -> bool {
    match (&cert.verdict, &cert.witness) {
        (Verdict::Feasible, Witness::Measure(mu)) => {
            mu.values().all(|p| !p.is_negative())
                && mu.keys().all(|&xi| xi < inst.hidden_count())
                && (0..inst.rows.len()).all(|r| {
                    let lhs: Rational = mu.iter().filter(|(&xi, _)| inst.coefficient(r, xi)).map(|(_, p)| p).sum();
                    lhs == inst.rhs[r]
                })
        }
        (Verdict::Infeasible, Witness::Farkas(w)) => {
            w.len() == inst.rows.len()
                && (0..inst.hidden_count()).into_par_iter().all(|xi| {
                    let s: Rational = (0..inst.rows.len()).filter(|&r| inst.coefficient(r, xi)).map(|r| &w[r]).sum();
                    !s.is_negative()
                })
                && w.iter().zip(&inst.rhs).map(|(a, b)| a * b).sum::<Rational>().is_negative()
        }
        _ => false,
    }
}

/// Exact feasibility of a local hidden-variable measure reproducing a
/// probabilistic table.
pub fn lhv_feasibility(table: &BornTable, opts: LhvOptions) -> Result<LhvCertificate> {
    lhv_feasibility_instance(&LhvInstance::from_table(table)?, opts)
}

pub fn lhv_feasibility_instance(inst: &LhvInstance, opts: LhvOptions) -> Result<LhvCertificate> {
    let (verdict, witness, pivots) = if opts.symmetry {
        solve_symmetric(inst)?
    } else {
        let r = phase_one(&inst.dense(), &inst.rhs)?;
        match r.outcome {
            Feasibility::Feasible(x) => {
                let mu = x.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
                (Verdict::Feasible, Witness::Measure(mu), r.pivots)
            }
            Feasibility::Infeasible(y) => (Verdict::Infeasible, Witness::Farkas(y.into_iter().map(|v| -v).collect()), r.pivots),
        }
    };
    let mut cert = LhvCertificate { verdict, witness, pivots, verified: false };
    cert.verified = verify_certificate(inst, &cert);
    if !cert.verified {
        return Err(Error::Solver("certificate failed exact re-verification".into()));
    }
    Ok(cert)
}

fn solve_symmetric(inst: &LhvInstance) -> Result<(Verdict, Witness, usize)> {
    let perms = inst.site_permutations();
    let row_index: BTreeMap<Row, usize> = inst.rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let row_perm: Vec<Vec<usize>> = perms
        .iter()
        .map(|pi| {
            (0..inst.rows.len())
                .map(|r| inst.permute_row(pi, inst.rows[r]).and_then(|pr| row_index.get(&pr).copied()))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Solver("constraint rows are not closed under site permutations".into()))?;
    if row_perm.iter().any(|rp| (0..inst.rows.len()).any(|r| inst.rhs[rp[r]] != inst.rhs[r])) {
        return Err(Error::Solver("table is not invariant under site permutations".into()));
    }
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for xi in 0..inst.hidden_count() {
        let rep = perms.iter().map(|pi| inst.permute_hidden(pi, xi)).min().expect("identity");
        orbits.entry(rep).or_default().push(xi);
    }
    let orbits: Vec<Vec<usize>> = orbits.into_values().collect();
    let a: Vec<Vec<Rational>> = (0..inst.rows.len())
        .map(|r| {
            orbits
                .iter()
                .map(|o| Rational::new(o.iter().filter(|&&xi| inst.coefficient(r, xi)).count().into(), o.len().into()))
                .collect()
        })
        .collect();
    let res = phase_one(&a, &inst.rhs)?;
    Ok(match res.outcome {
        Feasibility::Feasible(x) => {
            let mut mu = BTreeMap::new();
            for (o, p) in orbits.iter().zip(x) {
                if !p.is_zero() {
                    let share = &p / Rational::from_integer(o.len().into());
                    for &xi in o {
                        mu.insert(xi, share.clone());
                    }
                }
            }
            (Verdict::Feasible, Witness::Measure(mu), res.pivots)
        }
        Feasibility::Infeasible(y) => {
            // Averaging the row weights over the group turns a witness for
            // the orbit system into one for the full system.
            let k = Rational::from_integer(perms.len().into());
            let w = (0..inst.rows.len())
                .map(|r| -row_perm.iter().map(|rp| &y[rp[r]]).sum::<Rational>() / &k)
                .collect();
            (Verdict::Infeasible, Witness::Farkas(w), res.pivots)
        }
    })
}

/// Deterministic assignments whose outcome in every context is possible.
pub fn consistent_assignments(table: &BornTable) -> Vec<usize> {
    let (n, m) = (table.sites, table.observable_count());
    (0..1usize << (n * m))
        .into_par_iter()
        .filter(|&xi| {
            table
                .contexts
                .iter()
                .zip(&table.weights)
                .all(|(ctx, ws)| ws[induced(n, m, xi, ctx)].is_possible())
        })
        .collect()
}

/// Possibilistic model: feasible iff the consistent assignments realize
/// every possible outcome of every context.
pub fn possibilistic_lhv(table: &BornTable) -> Result<LhvCertificate> {
    if !table.is_possibilistic() {
        return Err(Error::BornTable("possibilistic mode needs possibilities".into()));
    }
    let cert = possibilistic_search(table);
    let verified = verify_possibilistic(table, &cert);
    Ok(LhvCertificate { verified, ..cert })
}

fn possibilistic_search(table: &BornTable) -> LhvCertificate {
    let (n, m) = (table.sites, table.observable_count());
    let c = consistent_assignments(table);
    for (ci, (ctx, ws)) in table.contexts.iter().zip(&table.weights).enumerate() {
        let induced_set: BTreeSet<usize> = c.iter().map(|&xi| induced(n, m, xi, ctx)).collect();
        if let Some(o) = (0..ws.len()).find(|&o| ws[o].is_possible() && !induced_set.contains(&o)) {
            return LhvCertificate {
                verdict: Verdict::Infeasible,
                witness: Witness::Uncovered { context: ci, outcome: o, consistent: c.len() },
                pivots: 0,
                verified: false,
            };
        }
    }
    LhvCertificate { verdict: Verdict::Feasible, witness: Witness::Cover(c), pivots: 0, verified: false }
}

/// Re-checks a possibilistic certificate by direct scan.
pub fn verify_possibilistic(table: &BornTable, cert: &LhvCertificate) -> bool {
    let (n, m) = (table.sites, table.observable_count());
    match &cert.witness {
        Witness::Cover(c) => {
            let consistent = |xi: usize| {
                table.contexts.iter().zip(&table.weights).all(|(ctx, ws)| ws[induced(n, m, xi, ctx)].is_possible())
            };
            c.iter().all(|&xi| consistent(xi))
                && table.contexts.iter().zip(&table.weights).all(|(ctx, ws)| {
                    (0..ws.len()).all(|o| !ws[o].is_possible() || c.iter().any(|&xi| induced(n, m, xi, ctx) == o))
                })
        }
        Witness::Uncovered { context, outcome, .. } => {
            let ctx = &table.contexts[*context];
            table.weights[*context][*outcome].is_possible()
                && consistent_assignments(table).iter().all(|&xi| induced(n, m, xi, ctx) != *outcome)
        }
        _ => false,
    }
}

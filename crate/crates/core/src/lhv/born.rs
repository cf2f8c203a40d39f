// SPDX-License-Identifier: Apache-2.0

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cat_core::Morphism;
use crate::error::{Error, Result};
use crate::scalar::{rational_to_json, BoolScalar, CycloScalar, Rational};

/// The weight of one outcome in one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BornWeight {
    Probability(Rational),
    Possibility(bool),
}

impl BornWeight {
    pub fn is_possible(&self) -> bool {
        match self {
            BornWeight::Probability(p) => !p.is_zero(),
            BornWeight::Possibility(b) => *b,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BornWeight::Probability(p) => rational_to_json(p),
            BornWeight::Possibility(b) => serde_json::Value::Bool(*b),
        }
    }
}

/// Scalars whose amplitudes determine outcome weights.
pub trait BornRule: crate::scalar::Scalar {
    /// Weights of one context's outcomes from their amplitudes.
    fn born_weights(amplitudes: &[Self]) -> Result<Vec<BornWeight>>;
}

impl BornRule for CycloScalar {
    /// Squared moduli renormalized to sum to one within the context.
    fn born_weights(amplitudes: &[Self]) -> Result<Vec<BornWeight>> {
        let sq: Vec<Rational> = amplitudes.iter().map(CycloScalar::squared_modulus).try_collect()?;
        let total: Rational = sq.iter().sum();
        if total.is_zero() {
            return Err(Error::BornTable("context with all-zero outcomes".into()));
        }
        Ok(sq.into_iter().map(|p| BornWeight::Probability(p / &total)).collect())
    }
}

impl BornRule for BoolScalar {
    fn born_weights(amplitudes: &[Self]) -> Result<Vec<BornWeight>> {
        if amplitudes.iter().all(|a| !a.0) {
            return Err(Error::BornTable("context with no possible outcome".into()));
        }
        Ok(amplitudes.iter().map(|a| BornWeight::Possibility(a.0)).collect())
    }
}

/// Outcome weights for every choice of observable per site.
///
/// Context `c` lists an observable index per site; outcome `o` packs one bit
/// per site, site 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BornTable {
    pub sites: usize,
    pub labels: Vec<String>,
    pub contexts: Vec<Vec<usize>>,
    pub weights: Vec<Vec<BornWeight>>,
}

impl BornTable {
    pub fn observable_count(&self) -> usize {
        self.labels.len()
    }

    pub fn outcome_count(&self) -> usize {
        1 << self.sites
    }

    /// Bit of site `s` in outcome `o`.
    pub fn outcome_bit(&self, o: usize, s: usize) -> usize {
        (o >> (self.sites - 1 - s)) & 1
    }

    pub fn is_probabilistic(&self) -> bool {
        self.weights.iter().flatten().all(|w| matches!(w, BornWeight::Probability(_)))
    }

    pub fn is_possibilistic(&self) -> bool {
        self.weights.iter().flatten().all(|w| matches!(w, BornWeight::Possibility(_)))
    }

    pub fn context_index(&self, labels: &[&str]) -> Option<usize> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l))
            .collect::<Option<_>>()?;
        self.contexts.iter().position(|c| *c == idx)
    }

    pub fn probability(&self, context: usize, outcome: usize) -> Option<&Rational> {
        match &self.weights[context][outcome] {
            BornWeight::Probability(p) => Some(p),
            BornWeight::Possibility(_) => None,
        }
    }

    /// Probabilities summing to one per context, or at least one possible
    /// outcome per context.
    pub fn validate(&self) -> Result<()> {
        for (c, ws) in self.weights.iter().enumerate() {
            if ws.len() != self.outcome_count() {
                return Err(Error::BornTable(format!("context {c} has {} outcomes", ws.len())));
            }
            if self.is_probabilistic() {
                let total: Rational = ws.iter().filter_map(|w| match w {
                    BornWeight::Probability(p) => Some(p.clone()),
                    BornWeight::Possibility(_) => None,
                }).sum();
                if !total.is_one() {
                    return Err(Error::BornTable(format!("context {c} sums to {total}")));
                }
            } else if !ws.iter().any(BornWeight::is_possible) {
                return Err(Error::BornTable(format!("context {c} has no possible outcome")));
            }
        }
        Ok(())
    }

    /// Nonzero probability becomes possible.
    pub fn to_possibilistic(&self) -> BornTable {
        let weights = self
            .weights
            .iter()
            .map(|ws| ws.iter().map(|w| BornWeight::Possibility(w.is_possible())).collect())
            .collect();
        BornTable { weights, ..self.clone() }
    }

    /// Uniform probability over the possible outcomes of each context.
    pub fn to_uniform_probabilistic(&self) -> BornTable {
        let weights = self
            .weights
            .iter()
            .map(|ws| {
                let n = ws.iter().filter(|w| w.is_possible()).count();
                ws.iter()
                    .map(|w| {
                        BornWeight::Probability(if w.is_possible() {
                            Rational::new(1.into(), n.into())
                        } else {
                            Rational::zero()
                        })
                    })
                    .collect()
            })
            .collect();
        BornTable { weights, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let contexts: Vec<_> = self
            .contexts
            .iter()
            .zip(&self.weights)
            .map(|(c, ws)| {
                let names: Vec<&str> = c.iter().map(|&i| self.labels[i].as_str()).collect();
                let ws: Vec<_> = ws.iter().map(BornWeight::to_json).collect();
                serde_json::json!({ "context": names, "weights": ws })
            })
            .collect();
        serde_json::json!({ "sites": self.sites, "observables": self.labels, "contexts": contexts })
    }
}

/// Born table of an `n`-site state. `bases[k]` lists the eigenstates of
/// observable `k` in outcome order.
pub fn born_table<S: BornRule>(psi: &Morphism<S>, labels: &[String], bases: &[Vec<Morphism<S>>]) -> Result<BornTable> {
    let m = bases.len();
    if m == 0 || labels.len() != m || bases.iter().any(|b| b.len() != 2) {
        return Err(Error::BornTable("need observables with exactly two eigenstates each".into()));
    }
    let q = bases[0][0].cod();
    let sites = (psi.cod().power / q.power.max(1)) as usize;
    if !psi.dom().is_unit() || psi.cod() != q.with_power(sites as u32 * q.power) || sites == 0 {
        return Err(Error::BornTable(format!("state on {} is not a power of {q}", psi.cod())));
    }
    let contexts: Vec<Vec<usize>> = (0..sites).map(|_| 0..m).multi_cartesian_product().collect();
    let weights = contexts
        .par_iter()
        .map(|ctx| {
            let amps: Vec<S> = (0..1usize << sites)
                .map(|o| {
                    let effect = (0..sites)
                        .map(|s| &bases[ctx[s]][(o >> (sites - 1 - s)) & 1])
                        .fold(None::<Morphism<S>>, |acc, x| Some(acc.map_or_else(|| x.clone(), |a| a.tensor(x))))
                        .expect("at least one site")
                        .dagger();
                    Ok(effect.compose(psi)?.entries()[0].clone())
                })
                .collect::<Result<_>>()?;
            S::born_weights(&amps)
        })
        .collect::<Result<Vec<_>>>()?;
    let table = BornTable {
        sites,
        labels: labels.to_vec(),
        contexts,
        weights,
    };
    table.validate()?;
    Ok(table)
}

// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Observable;
use crate::cat_core::{DiagramTerm, Morphism};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Bounds on random diagrams.
pub const MAX_NODES: usize = 8;
pub const MAX_WIRES: u32 = 4;
const MAX_ATTEMPTS: usize = 10_000;

/// `Δ_n ∘ μ_m`: `m`-fold multiplication followed by `n`-fold
/// comultiplication. `spider(0, 0)` is `ε ∘ ε†`.
pub fn spider_canonical<S: Scalar>(m: u32, n: u32, obs: &Observable<S>) -> Result<Morphism<S>> {
    let x = obs.object();
    let p = x.power;
    let delta_dag = obs.delta.dagger();
    let mut mu = if m == 0 {
        obs.unit_state()
    } else {
        Morphism::identity(x.with_power(m * p))
    };
    // Fold inputs pairwise from the left: δ† ∘ (μ_{k-1} ⊗ 1).
    for k in (2..=m).rev() {
        mu = mu.apply_local(&delta_dag, (k - 2) * p)?;
    }
    let mut out = mu;
    if n == 0 {
        return out.apply_local(&obs.epsilon, 0);
    }
    for k in 1..n {
        out = out.apply_local(&obs.delta, (k - 1) * p)?;
    }
    Ok(out)
}

/// A generator node of a random diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Delta,
    DeltaDag,
    Epsilon,
    EpsilonDag,
    Swap,
}

impl Node {
    fn arity(self) -> (u32, u32) {
        match self {
            Node::Delta => (1, 2),
            Node::DeltaDag => (2, 1),
            Node::Epsilon => (1, 0),
            Node::EpsilonDag => (0, 1),
            Node::Swap => (2, 2),
        }
    }

    fn term(self) -> DiagramTerm {
        match self {
            Node::Delta => DiagramTerm::Delta,
            Node::DeltaDag => DiagramTerm::DeltaDag,
            Node::Epsilon => DiagramTerm::Epsilon,
            Node::EpsilonDag => DiagramTerm::EpsilonDag,
            Node::Swap => DiagramTerm::Swap,
        }
    }
}

/// A diagram as a sequence of layers `1 ⊗ node ⊗ 1`, applied bottom-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredDiagram {
    pub inputs: u32,
    pub layers: Vec<(Node, u32)>,
}

impl LayeredDiagram {
    pub fn outputs(&self) -> u32 {
        self.layers.iter().fold(self.inputs, |w, (node, _)| {
            let (i, o) = node.arity();
            w - i + o
        })
    }

    /// Number of δ/ε/δ†/ε† nodes.
    pub fn node_count(&self) -> usize {
        self.layers.iter().filter(|(n, _)| *n != Node::Swap).count()
    }

    pub fn to_term(&self) -> DiagramTerm {
        let mut w = self.inputs;
        let mut term = DiagramTerm::Id(w);
        for &(node, offset) in &self.layers {
            let (i, o) = node.arity();
            let layer = DiagramTerm::tensor(
                DiagramTerm::tensor(DiagramTerm::Id(offset), node.term()),
                DiagramTerm::Id(w - offset - i),
            );
            term = DiagramTerm::compose(layer, term);
            w = w - i + o;
        }
        term
    }

    pub fn evaluate<S: Scalar>(&self, obs: &Observable<S>) -> Result<Morphism<S>> {
        let x = obs.object();
        let p = x.power;
        let mut m = Morphism::identity(x.with_power(self.inputs * p));
        for &(node, offset) in &self.layers {
            let gate = match node {
                Node::Delta => obs.delta.clone(),
                Node::DeltaDag => obs.delta.dagger(),
                Node::Epsilon => obs.epsilon.clone(),
                Node::EpsilonDag => obs.unit_state(),
                Node::Swap => Morphism::swap(x, x),
            };
            m = m.apply_local(&gate, offset * p)?;
        }
        Ok(m)
    }

    /// A random diagram with boundary `(m, n)`: a random walk of up to
    /// [`MAX_NODES`] layers followed by forced layers that reach `n` wires.
    /// Returns `None` when a bound is exceeded.
    pub fn random(rng: &mut impl Rng, m: u32, n: u32) -> Option<LayeredDiagram> {
        let mut d = LayeredDiagram {
            inputs: m,
            layers: Vec::new(),
        };
        let mut w = m;
        let steps = rng.random_range(0..=MAX_NODES);
        for _ in 0..steps {
            let options: Vec<Node> = [Node::Delta, Node::DeltaDag, Node::Epsilon, Node::EpsilonDag, Node::Swap]
                .into_iter()
                .filter(|node| {
                    let (i, o) = node.arity();
                    w >= i && w - i + o <= MAX_WIRES
                })
                .collect();
            let node = options[rng.random_range(0..options.len())];
            let (i, o) = node.arity();
            let offset = rng.random_range(0..=w - i);
            d.layers.push((node, offset));
            w = w - i + o;
        }
        while w != n {
            let node = match (w > n, w) {
                (true, 1) => Node::Epsilon,
                (true, _) => Node::DeltaDag,
                (false, 0) => Node::EpsilonDag,
                (false, _) => Node::Delta,
            };
            let (i, o) = node.arity();
            let offset = rng.random_range(0..=w - i);
            d.layers.push((node, offset));
            w = w - i + o;
        }
        (d.node_count() <= MAX_NODES).then_some(d)
    }
}

/// Results for one boundary shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderShape {
    pub m: u32,
    pub n: u32,
    pub trials: usize,
    /// Generated diagrams discarded as disconnected or oversized.
    pub rejected: usize,
    /// Trial indices whose diagram differed from the canonical spider.
    pub failures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderReport {
    pub seed: u64,
    pub shapes: Vec<SpiderShape>,
}

impl SpiderReport {
    pub fn passed(&self) -> bool {
        self.shapes.iter().all(|s| s.failures.is_empty())
    }

    pub fn total_trials(&self) -> usize {
        self.shapes.iter().map(|s| s.trials).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let shapes: Vec<_> = self
            .shapes
            .iter()
            .map(|s| {
                serde_json::json!({
                    "m": s.m, "n": s.n, "trials": s.trials,
                    "rejected": s.rejected, "failures": s.failures,
                })
            })
            .collect();
        serde_json::json!({ "seed": self.seed, "passed": self.passed(), "shapes": shapes })
    }
}

fn trial_seed(seed: u64, m: u32, n: u32, trial: usize) -> u64 {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for v in [m as u64, n as u64, trial as u64] {
        h = (h ^ v).wrapping_mul(0x1000_0000_01B3).rotate_left(17);
    }
    h
}

/// Draws a connected random diagram for one trial; returns it with the
/// number of rejected draws.
pub fn connected_diagram<S: Scalar>(
    obs: &Observable<S>,
    m: u32,
    n: u32,
    seed: u64,
) -> Result<(LayeredDiagram, usize)> {
    let gens = obs.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rejected in 0..MAX_ATTEMPTS {
        if let Some(d) = LayeredDiagram::random(&mut rng, m, n) {
            if d.node_count() > 0 && d.to_term().is_connected(&gens)? {
                return Ok((d, rejected));
            }
        }
    }
    Err(Error::Check {
        id: "spider".into(),
        detail: format!("no connected ({m},{n}) diagram after {MAX_ATTEMPTS} draws"),
    })
}

/// Evaluates `trials` random connected diagrams for every boundary shape
/// `(m, n)` with `m, n ≤ max_arity` and compares each with the canonical
/// spider. Trials run in parallel; results are ordered by trial index.
pub fn spider_property_test<S: Scalar>(
    obs: &Observable<S>,
    trials: usize,
    seed: u64,
    max_arity: u32,
) -> Result<SpiderReport> {
    let mut shapes = Vec::new();
    for m in 0..=max_arity {
        for n in 0..=max_arity {
            let canonical = spider_canonical(m, n, obs)?;
            let outcomes: Vec<Result<(bool, usize)>> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let (d, rejected) = connected_diagram(obs, m, n, trial_seed(seed, m, n, t))?;
                    Ok((d.evaluate(obs)? == canonical, rejected))
                })
                .collect();
            let mut shape = SpiderShape {
                m,
                n,
                trials,
                rejected: 0,
                failures: Vec::new(),
            };
            for (t, outcome) in outcomes.into_iter().enumerate() {
                let (ok, rejected) = outcome?;
                shape.rejected += rejected;
                if !ok {
                    shape.failures.push(t);
                }
            }
            shapes.push(shape);
        }
    }
    Ok(SpiderReport { seed, shapes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_core::TheoryObject;
    use crate::scalar::{BoolScalar, CycloScalar};

    fn copier<S: Scalar>() -> Observable<S> {
        let q = TheoryObject::new(1, 2);
        let delta = Morphism::from_fn(q, q.with_power(2), |r, c| if r == 3 * c { S::one() } else { S::zero() });
        let epsilon = Morphism::from_fn(q, q.with_power(0), |_, _| S::one());
        Observable::new("Z", delta, epsilon).unwrap()
    }

    #[test]
    fn small_spiders() {
        let o = copier::<CycloScalar>();
        assert_eq!(spider_canonical(1, 1, &o).unwrap(), Morphism::identity(o.object()));
        assert_eq!(spider_canonical(1, 2, &o).unwrap(), o.delta);
        assert_eq!(spider_canonical(2, 1, &o).unwrap(), o.delta.dagger());
        assert_eq!(spider_canonical(1, 0, &o).unwrap(), o.epsilon);
        assert_eq!(spider_canonical(0, 1, &o).unwrap(), o.unit_state());
        let s00 = spider_canonical(0, 0, &o).unwrap();
        assert_eq!(s00.as_scalar(), Some(&CycloScalar::from_int(2)));
        let b = copier::<BoolScalar>();
        assert_eq!(spider_canonical(0, 0, &b).unwrap().as_scalar(), Some(&BoolScalar(true)));
    }

    #[test]
    fn layered_evaluation_matches_term_evaluation() {
        let o = copier::<CycloScalar>();
        let gens = o.generators();
        for t in 0..40 {
            let (d, _) = connected_diagram(&o, (t % 3) as u32, (t % 4) as u32, t).unwrap();
            assert_eq!(d.evaluate(&o).unwrap(), d.to_term().evaluate(&gens).unwrap());
            assert_eq!(d.outputs(), (t % 4) as u32);
            assert!(d.node_count() <= MAX_NODES);
        }
    }

    #[test]
    fn spider_theorem_on_copier() {
        let r = spider_property_test(&copier::<BoolScalar>(), 20, 7, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.shapes.len(), 16);
    }

    #[test]
    fn deterministic_reports() {
        let o = copier::<CycloScalar>();
        let a = spider_property_test(&o, 5, 11, 2).unwrap();
        let b = spider_property_test(&o, 5, 11, 2).unwrap();
        assert_eq!(a, b);
    }
}

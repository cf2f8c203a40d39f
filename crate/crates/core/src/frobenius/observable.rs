// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use super::compact::CompactStructure;
use super::spider::spider_property_test;
use crate::cat_core::{Generators, Morphism, TheoryObject};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Seed and trial count of the spider check embedded in [`check_observable`].
const SPIDER_CHECK_SEED: u64 = 0x5EED;
const SPIDER_CHECK_TRIALS: usize = 6;
const SPIDER_CHECK_ARITY: u32 = 2;

/// A commutative isometric dagger Frobenius comonoid `(X, δ, ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observable<S> {
    pub label: String,
    pub delta: Morphism<S>,
    pub epsilon: Morphism<S>,
}

impl<S: Scalar> Observable<S> {
    /// Checks shapes only.
    pub fn new(label: impl Into<String>, delta: Morphism<S>, epsilon: Morphism<S>) -> Result<Self> {
        check_shapes(&delta, &epsilon)?;
        Ok(Observable {
            label: label.into(),
            delta,
            epsilon,
        })
    }

    /// Checks shapes and every axiom.
    pub fn validated(
        label: impl Into<String>,
        delta: Morphism<S>,
        epsilon: Morphism<S>,
    ) -> Result<Self> {
        let report = check_observable(&delta, &epsilon)?;
        if !report.all_pass() {
            return Err(Error::InvalidObservable(format!(
                "failed axioms: {}",
                report.failures().join(", ")
            )));
        }
        Observable::new(label, delta, epsilon)
    }

    pub fn object(&self) -> TheoryObject {
        self.epsilon.dom()
    }

    /// `ε†`, the unit of `⊙`.
    pub fn unit_state(&self) -> Morphism<S> {
        self.epsilon.dagger()
    }

    /// `ε ∘ ε†`.
    pub fn dim_scalar(&self) -> S {
        self.epsilon.compose(&self.unit_state()).expect("ε ∘ ε† is well typed").entries()[0].clone()
    }

    /// The number whose square is `dim(X)`; the rescaling between unit-length
    /// eigenstates and length-√dim unbiased states.
    pub fn sqrt_dim(&self) -> Result<S> {
        let d = self.dim_scalar();
        d.sqrt()
            .ok_or_else(|| Error::Ring(format!("dim(X) = {d} has no square root")))
    }

    /// `η = δ ∘ ε†`.
    pub fn eta(&self) -> Morphism<S> {
        self.delta.compose(&self.unit_state()).expect("δ ∘ ε† is well typed")
    }

    pub fn compact(&self) -> Result<CompactStructure<S>> {
        CompactStructure::new(self.eta())
    }

    /// Diagram generators interpreting `Delta`/`Epsilon` as this observable.
    pub fn generators(&self) -> Generators<S> {
        Generators {
            base_dim: self.object().base_dim,
            delta: self.delta.clone(),
            epsilon: self.epsilon.clone(),
            named: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "delta": self.delta.to_json(),
            "epsilon": self.epsilon.to_json(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let label = value
            .get("label")
            .and_then(|l| l.as_str())
            .ok_or_else(|| Error::Json(format!("observable without label: {value}")))?;
        let field = |k: &str| {
            value
                .get(k)
                .ok_or_else(|| Error::Json(format!("observable without {k}")))
                .and_then(Morphism::from_json)
        };
        Observable::new(label, field("delta")?, field("epsilon")?)
    }
}

fn check_shapes<S: Scalar>(delta: &Morphism<S>, epsilon: &Morphism<S>) -> Result<()> {
    let x = epsilon.dom();
    if !epsilon.cod().is_unit() || x.is_unit() {
        return Err(Error::Shape(format!("ε must be X → I, got {} → {}", x, epsilon.cod())));
    }
    if delta.dom() != x || delta.cod() != x.with_power(2 * x.power) {
        return Err(Error::Shape(format!(
            "δ must be {x} → {x}⊗{x}, got {} → {}",
            delta.dom(),
            delta.cod()
        )));
    }
    Ok(())
}

/// Pass/fail per Frobenius axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservableReport {
    pub coassociative: bool,
    pub cocommutative: bool,
    pub counit: bool,
    pub isometric: bool,
    pub frobenius: bool,
    pub spider: bool,
}

impl ObservableReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.coassociative, "coassociativity"),
            (self.cocommutative, "cocommutativity"),
            (self.counit, "counit"),
            (self.isometric, "isometry"),
            (self.frobenius, "frobenius"),
            (self.spider, "spider"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coassociative": self.coassociative,
            "cocommutative": self.cocommutative,
            "counit": self.counit,
            "isometric": self.isometric,
            "frobenius": self.frobenius,
            "spider": self.spider,
            "all_pass": self.all_pass(),
        })
    }
}

/// Checks each axiom of a commutative isometric dagger Frobenius comonoid,
/// then compares a few random connected diagrams against the spider normal
/// form.
pub fn check_observable<S: Scalar>(
    delta: &Morphism<S>,
    epsilon: &Morphism<S>,
) -> Result<ObservableReport> {
    check_shapes(delta, epsilon)?;
    let x = epsilon.dom();
    let p = x.power;
    let id = Morphism::identity(x);
    let delta_dag = delta.dagger();

    let coassociative = delta.apply_local(delta, 0)? == delta.apply_local(delta, p)?;
    let cocommutative = delta.apply_local(&Morphism::swap(x, x), 0)? == *delta;
    let counit = delta.apply_local(epsilon, 0)? == id && delta.apply_local(epsilon, p)? == id;
    let isometric = delta_dag.compose(delta)? == id;

    let id2 = Morphism::identity(x.with_power(2 * p));
    let middle = delta.compose(&delta_dag)?;
    let left = id2.apply_local(delta, p)?.apply_local(&delta_dag, 0)?;
    let right = id2.apply_local(delta, 0)?.apply_local(&delta_dag, p)?;
    let frobenius = left == middle && right == middle;

    // The spider check is skipped (reported false) once an axiom fails.
    let algebraic = coassociative && cocommutative && counit && isometric && frobenius;
    let spider = algebraic && {
        let obs = Observable {
            label: String::new(),
            delta: delta.clone(),
            epsilon: epsilon.clone(),
        };
        spider_property_test(&obs, SPIDER_CHECK_TRIALS, SPIDER_CHECK_SEED, SPIDER_CHECK_ARITY)?.passed()
    };

    Ok(ObservableReport {
        coassociative,
        cocommutative,
        counit,
        isometric,
        frobenius,
        spider,
    })
}

/// The observable on `X ⊗ X′` with `δ = (1 ⊗ σ ⊗ 1) ∘ (δ ⊗ δ′)` and
/// `ε = ε ⊗ ε′`.
pub fn lift_tensor<S: Scalar>(o1: &Observable<S>, o2: &Observable<S>) -> Result<Observable<S>> {
    let (x, y) = (o1.object(), o2.object());
    let delta = o1
        .delta
        .tensor(&o2.delta)
        .apply_local(&Morphism::swap(x, y), x.power)?;
    let epsilon = o1.epsilon.tensor(&o2.epsilon);
    Observable::validated(format!("{}⊗{}", o1.label, o2.label), delta, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{BoolScalar, CycloScalar};

    fn copier<S: Scalar>(d: usize) -> Observable<S> {
        let q = TheoryObject::new(1, d);
        let delta = Morphism::from_fn(q, q.with_power(2), |r, c| {
            if r == c * d + c {
                S::one()
            } else {
                S::zero()
            }
        });
        let epsilon = Morphism::from_fn(q, q.with_power(0), |_, _| S::one());
        Observable::new("Z", delta, epsilon).unwrap()
    }

    #[test]
    fn basis_copiers_pass() {
        let o = copier::<CycloScalar>(2);
        assert!(check_observable(&o.delta, &o.epsilon).unwrap().all_pass());
        let o = copier::<BoolScalar>(3);
        assert!(check_observable(&o.delta, &o.epsilon).unwrap().all_pass());
    }

    #[test]
    fn rotated_legs_fail() {
        let o = copier::<CycloScalar>(2);
        let q = o.object();
        // Both output legs through a non-basis unitary (Hadamard).
        let h = CycloScalar::inv_root2();
        let had = Morphism::new(q, q, vec![h.clone(), h.clone(), h.clone(), h.neg()]).unwrap();
        let bad = o.delta.apply_local(&had, 0).unwrap().apply_local(&had, 1).unwrap();
        let report = check_observable(&bad, &o.epsilon).unwrap();
        assert!(!report.all_pass());
        assert!(!report.counit || !report.frobenius || !report.isometric);
    }

    #[test]
    fn shape_errors() {
        let o = copier::<BoolScalar>(2);
        assert!(check_observable(&o.epsilon, &o.delta).is_err());
    }

    #[test]
    fn lifted_copier() {
        let o = copier::<CycloScalar>(2);
        let l = lift_tensor(&o, &o).unwrap();
        assert_eq!(l.object(), TheoryObject::new(2, 2));
        for i in 0..4 {
            let b = Morphism::<CycloScalar>::basis_state(l.object(), i);
            assert_eq!(l.delta.compose(&b).unwrap(), b.tensor(&b));
        }
    }

    #[test]
    fn json_round_trip() {
        let o = copier::<CycloScalar>(2);
        assert_eq!(Observable::from_json(&o.to_json()).unwrap(), o);
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use super::compact::conjugate_state;
use super::Observable;
use crate::cat_core::Morphism;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind};

/// `s ⊙ t = δ† ∘ (s ⊗ t)`.
pub fn multiply<S: Scalar>(obs: &Observable<S>, s: &Morphism<S>, t: &Morphism<S>) -> Result<Morphism<S>> {
    obs.delta.dagger().compose(&s.tensor(t))
}

/// `x_*` with respect to the compact structure induced by `obs`.
pub fn conjugate_of<S: Scalar>(obs: &Observable<S>, x: &Morphism<S>) -> Result<Morphism<S>> {
    conjugate_state(x, &obs.compact()?)
}

/// `δ ∘ x = x ⊗ x`, `ε ∘ x = 1`, `x_* = x` and `x† ∘ x = 1`.
pub fn is_eigenstate<S: Scalar>(obs: &Observable<S>, x: &Morphism<S>) -> Result<bool> {
    if x.cod() != obs.object() || !x.is_state() {
        return Ok(false);
    }
    Ok(obs.delta.compose(x)? == x.tensor(x)
        && obs.epsilon.compose(x)?.entries()[0].is_one()
        && x.norm_squared().is_one()
        && conjugate_of(obs, x)? == *x)
}

/// Route (a): for each catalog state `c`, the phase `u` with
/// `δ ∘ c = u · (c ⊗ c)` makes `u · c` the only eigenstate candidate in its
/// phase class.
pub fn eigenstates_from_catalog<S: Scalar>(
    obs: &Observable<S>,
    catalog: &[Morphism<S>],
) -> Result<Vec<Morphism<S>>> {
    let mut found = Vec::new();
    for c in catalog {
        if c.cod() != obs.object() || c.is_zero() {
            continue;
        }
        let copied = obs.delta.compose(c)?;
        if let Some(u) = c.tensor(c).proportionality(&copied) {
            let x = c.scale(&u);
            if is_eigenstate(obs, &x)? && !found.contains(&x) {
                found.push(x);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Route (b), independent of any catalog. Boolean: scan every nonempty
/// subset (objects of dimension ≤ 4). Cyclotomic, dimension 2: eigenvectors
/// of an action matrix `δ† ∘ (a ⊗ 1)` with distinct eigenvalues, since that
/// matrix is diagonal in the copied basis. `None` when neither applies.
pub fn eigenstates_direct<S: Scalar>(obs: &Observable<S>) -> Result<Option<Vec<Morphism<S>>>> {
    let x = obs.object();
    let d = x.dim();
    let mut found = Vec::new();
    match (S::KIND, d) {
        (ScalarKind::Boolean, 1..=4) => {
            for mask in 1..(1usize << d) {
                let amps = (0..d)
                    .map(|i| if mask >> i & 1 == 1 { S::one() } else { S::zero() })
                    .collect();
                let s = Morphism::state(x, amps)?;
                if is_eigenstate(obs, &s)? {
                    found.push(s);
                }
            }
        }
        (ScalarKind::Cyclotomic, 2) => {
            let delta_dag = obs.delta.dagger();
            for probe in 0..2 {
                let a = Morphism::basis_state(x, probe);
                let m = delta_dag.compose(&a.tensor(&Morphism::identity(x)))?;
                let Some(vectors) = eigenvectors_2x2(&m) else {
                    continue;
                };
                for v in vectors {
                    let ev = obs.epsilon.compose(&v)?.entries()[0].clone();
                    let Some(c) = S::one().checked_div(&ev) else {
                        continue;
                    };
                    let s = v.scale(&c);
                    if is_eigenstate(obs, &s)? && !found.contains(&s) {
                        found.push(s);
                    }
                }
                break;
            }
        }
        _ => return Ok(None),
    }
    found.sort();
    Ok(Some(found))
}

/// Eigenvectors of a 2 × 2 matrix with two distinct eigenvalues in the ring.
fn eigenvectors_2x2<S: Scalar>(m: &Morphism<S>) -> Option<Vec<Morphism<S>>> {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let sub = |x: &S, y: &S| Some(x.add(&y.checked_neg()?));
    let two = S::one().add(&S::one());
    let four = two.add(&two);
    let trace = a.add(d);
    let det = sub(&a.mul(d), &b.mul(c))?;
    let disc = sub(&trace.mul(&trace), &four.mul(&det))?;
    if disc.is_zero() {
        return None;
    }
    let root = disc.sqrt()?;
    let mut out = Vec::new();
    for r in [root.clone(), root.checked_neg()?] {
        let lambda = trace.add(&r).checked_div(&two)?;
        // (M − λ) v = 0: take whichever row gives a nonzero vector.
        let v1 = [b.clone(), sub(&lambda, a)?];
        let v2 = [sub(&lambda, d)?, c.clone()];
        let v = if v1.iter().any(|x| !x.is_zero()) { v1 } else { v2 };
        out.push(Morphism::state(m.dom(), v.to_vec()).ok()?);
    }
    Some(out)
}

/// Union of both routes; the direct route must agree with the catalog route
/// on every state the catalog contains.
pub fn eigenstates<S: Scalar>(obs: &Observable<S>, catalog: &[Morphism<S>]) -> Result<Vec<Morphism<S>>> {
    let mut all = eigenstates_from_catalog(obs, catalog)?;
    if let Some(direct) = eigenstates_direct(obs)? {
        for x in direct {
            if !all.contains(&x) {
                all.push(x);
            }
        }
    }
    all.sort();
    Ok(all)
}

/// `sqrt_dim · x`: the length-√dim form used for unbiasedness, phase-group
/// elements and correlation triples.
pub fn rescale<S: Scalar>(obs: &Observable<S>, x: &Morphism<S>) -> Result<Morphism<S>> {
    Ok(x.scale(&obs.sqrt_dim()?))
}

/// `ψ_* ⊙ ψ = ε†` and `ψ† ∘ ψ = dim(X)`, for `ψ` already of length √dim.
pub fn is_unbiased<S: Scalar>(obs: &Observable<S>, psi: &Morphism<S>) -> Result<bool> {
    if psi.cod() != obs.object() || !psi.is_state() {
        return Ok(false);
    }
    if psi.norm_squared() != obs.dim_scalar() {
        return Ok(false);
    }
    Ok(multiply(obs, &conjugate_of(obs, psi)?, psi)? == obs.unit_state())
}

/// The catalog states that are unbiased for `obs`, returned in rescaled
/// (length √dim) form, in catalog order.
pub fn unbiased_states<S: Scalar>(obs: &Observable<S>, catalog: &[Morphism<S>]) -> Result<Vec<Morphism<S>>> {
    let mut out = Vec::new();
    for c in catalog {
        if c.cod() != obs.object() {
            continue;
        }
        let psi = rescale(obs, c)?;
        if is_unbiased(obs, &psi)? {
            out.push(psi);
        }
    }
    Ok(out)
}

/// `U_ψ = δ† ∘ (ψ ⊗ 1)`.
pub fn action<S: Scalar>(obs: &Observable<S>, psi: &Morphism<S>) -> Result<Morphism<S>> {
    let x = obs.object();
    obs.delta.dagger().compose(&psi.tensor(&Morphism::identity(x)))
}

pub fn is_unitary<S: Scalar>(u: &Morphism<S>) -> bool {
    if u.dom() != u.cod() {
        return false;
    }
    let id = Morphism::identity(u.dom());
    u.dagger().compose(u).is_ok_and(|m| m == id) && u.compose(&u.dagger()).is_ok_and(|m| m == id)
}

/// How a state relates to one observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateRole {
    Eigen,
    Unbiased,
    Neither,
}

impl StateRole {
    pub fn as_str(self) -> &'static str {
        match self {
            StateRole::Eigen => "eigen",
            StateRole::Unbiased => "unbiased",
            StateRole::Neither => "neither",
        }
    }
}

/// States of one object classified against a list of observables.
#[derive(Clone, Debug)]
pub struct StateCatalog<S> {
    /// Stored (unit-normalized) states.
    pub states: Vec<Morphism<S>>,
    pub labels: Vec<String>,
    /// `roles[i][k]`: role of state `i` for observable `k`.
    pub roles: Vec<Vec<StateRole>>,
    /// Eigenstates per observable label, with their exact phase.
    pub eigen: BTreeMap<String, Vec<Morphism<S>>>,
    /// Unbiased states per observable label, in length-√dim form.
    pub unbiased: BTreeMap<String, Vec<Morphism<S>>>,
}

impl<S: Scalar> StateCatalog<S> {
    pub fn build(observables: &[Observable<S>], states: &[Morphism<S>]) -> Result<Self> {
        let mut eigen = BTreeMap::new();
        let mut unbiased = BTreeMap::new();
        let mut roles = vec![Vec::with_capacity(observables.len()); states.len()];
        for obs in observables {
            if eigen.contains_key(&obs.label) {
                return Err(Error::InvalidObservable(format!("duplicate label {}", obs.label)));
            }
            let eig = eigenstates(obs, states)?;
            let unb = unbiased_states(obs, states)?;
            for (i, s) in states.iter().enumerate() {
                let role = if eig.iter().any(|x| x.equal_up_to_phase(s)) {
                    StateRole::Eigen
                } else if is_unbiased(obs, &rescale(obs, s)?)? {
                    StateRole::Unbiased
                } else {
                    StateRole::Neither
                };
                roles[i].push(role);
            }
            eigen.insert(obs.label.clone(), eig);
            unbiased.insert(obs.label.clone(), unb);
        }
        Ok(StateCatalog {
            states: states.to_vec(),
            labels: observables.iter().map(|o| o.label.clone()).collect(),
            roles,
            eigen,
            unbiased,
        })
    }

    /// Every state is an eigenstate of exactly one observable and unbiased
    /// for all others.
    pub fn is_partitioned(&self) -> bool {
        self.roles.iter().all(|r| {
            r.iter().filter(|&&x| x == StateRole::Eigen).count() == 1
                && r.iter().all(|&x| x != StateRole::Neither)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let states: Vec<_> = self
            .states
            .iter()
            .zip(&self.roles)
            .map(|(s, r)| {
                let flags: serde_json::Map<_, _> = self
                    .labels
                    .iter()
                    .zip(r)
                    .map(|(l, role)| (l.clone(), serde_json::Value::from(role.as_str())))
                    .collect();
                serde_json::json!({ "state": s.to_json(), "roles": flags })
            })
            .collect();
        serde_json::json!({ "observables": self.labels, "states": states })
    }
}

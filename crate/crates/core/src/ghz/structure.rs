// SPDX-License-Identifier: Apache-2.0

use itertools::Itertools;

use crate::cat_core::{Morphism, TheoryObject};
use crate::error::{Error, Result};
use crate::frobenius::{conjugate, conjugate_state, CompactStructure, Observable};
use crate::scalar::Scalar;

/// A tripartite state `Ψ: I → X ⊗ X ⊗ X` with an effect `ε: X → I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GHZStructure<S> {
    pub psi: Morphism<S>,
    pub epsilon: Morphism<S>,
}

impl<S: Scalar> GHZStructure<S> {
    pub fn new(psi: Morphism<S>, epsilon: Morphism<S>) -> Result<Self> {
        let x = epsilon.dom();
        if !epsilon.cod().is_unit() || !psi.dom().is_unit() || psi.cod() != x.with_power(3 * x.power) {
            return Err(Error::Shape(format!(
                "GHZ needs Ψ: I → X⊗X⊗X and ε: X → I, got Ψ: {} → {}, ε: {} → {}",
                psi.dom(),
                psi.cod(),
                x,
                epsilon.cod()
            )));
        }
        Ok(GHZStructure { psi, epsilon })
    }

    pub fn object(&self) -> TheoryObject {
        self.epsilon.dom()
    }

    /// `(ε ⊗ 1 ⊗ 1) ∘ Ψ`.
    pub fn marginal(&self) -> Morphism<S> {
        self.psi.apply_local(&self.epsilon, 0).expect("shapes checked")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "psi": self.psi.to_json(), "epsilon": self.epsilon.to_json() })
    }
}

/// `Ψ = (δ ⊗ 1) ∘ δ ∘ ε†`.
pub fn ghz_from_observable<S: Scalar>(obs: &Observable<S>) -> Result<GHZStructure<S>> {
    let psi = obs.delta.compose(&obs.unit_state())?.apply_local(&obs.delta, 0)?;
    GHZStructure::new(psi, obs.epsilon.clone())
}

/// Outcome of the four GHZ axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhzReport<S> {
    pub symmetric: bool,
    pub bell_marginal: bool,
    pub self_conjugate: bool,
    pub maximally_mixed: bool,
    /// `c` with trace-out `= c · 1`, when that holds.
    pub trace_scalar: Option<S>,
}

impl<S: Scalar> GhzReport<S> {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.symmetric, "symmetry"),
            (self.bell_marginal, "bell-marginal"),
            (self.self_conjugate, "self-conjugacy"),
            (self.maximally_mixed, "trace-out"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, n)| n)
        .collect()
    }

    /// The first three axioms hold but the trace-out reconstruction rejects
    /// the state.
    pub fn needs_review(&self) -> bool {
        self.symmetric && self.bell_marginal && self.self_conjugate && !self.maximally_mixed
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "symmetric": self.symmetric,
            "bell_marginal": self.bell_marginal,
            "self_conjugate": self.self_conjugate,
            "maximally_mixed": self.maximally_mixed,
            "trace_scalar": self.trace_scalar.as_ref().map(Scalar::to_json),
            "needs_review": self.needs_review(),
        })
    }
}

/// Wire permutation of `X^⊗3` moving whole legs.
fn leg_permutation<S: Scalar>(x: TheoryObject, legs: &[usize]) -> Result<Morphism<S>> {
    let p = x.power as usize;
    let wires: Vec<usize> = legs.iter().flat_map(|&l| (0..p).map(move |t| l * p + t)).collect();
    Morphism::permute_wires(x.with_power(3 * x.power), &wires)
}

/// `ρ[a][b] = Σ_{j,k} Ψ[a,j,k] · Ψ[b,j,k]†` with leg `keep` playing the role
/// of `a`, `b`.
fn reduced<S: Scalar>(psi: &Morphism<S>, dim: usize, keep: usize) -> Vec<Vec<S>> {
    let amp = |a: usize, j: usize, k: usize| {
        let idx = match keep {
            0 => (a * dim + j) * dim + k,
            1 => (j * dim + a) * dim + k,
            _ => (j * dim + k) * dim + a,
        };
        psi.entries()[idx].clone()
    };
    (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    (0..dim)
                        .cartesian_product(0..dim)
                        .fold(S::zero(), |acc, (j, k)| acc.add(&amp(a, j, k).mul(&amp(b, j, k).dagger())))
                })
                .collect()
        })
        .collect()
}

/// Checks symmetry, the Bell-state marginal, self-conjugacy of `Ψ` and `ε`,
/// and that tracing out any two legs of the doubled state leaves a nonzero
/// multiple of the identity.
pub fn verify_ghz<S: Scalar>(g: &GHZStructure<S>) -> Result<GhzReport<S>> {
    let x = g.object();
    let mut symmetric = true;
    for legs in (0..3).permutations(3) {
        if leg_permutation::<S>(x, &legs)?.compose(&g.psi)? != g.psi {
            symmetric = false;
        }
    }

    let compact = CompactStructure::new(g.marginal()).ok();
    let bell_marginal = compact.is_some();
    let self_conjugate = match &compact {
        Some(c) => {
            let c3 = c.tensor(c)?.tensor(c)?;
            let unit = CompactStructure::unit(x.base_dim);
            conjugate_state(&g.psi, &c3)? == g.psi && conjugate(&g.epsilon, c, &unit)? == g.epsilon
        }
        None => false,
    };

    let dim = x.dim();
    let mut trace_scalar: Option<S> = None;
    let mut maximally_mixed = true;
    for keep in 0..3 {
        let rho = reduced(&g.psi, dim, keep);
        let c = rho[0][0].clone();
        let is_multiple = !c.is_zero()
            && (0..dim).all(|a| (0..dim).all(|b| rho[a][b] == if a == b { c.clone() } else { S::zero() }));
        if !is_multiple || trace_scalar.as_ref().is_some_and(|t| *t != c) {
            maximally_mixed = false;
        }
        trace_scalar.get_or_insert(c);
    }

    Ok(GhzReport {
        symmetric,
        bell_marginal,
        self_conjugate,
        maximally_mixed,
        trace_scalar: trace_scalar.filter(|_| maximally_mixed),
    })
}

/// `δ = (β† ⊗ 1 ⊗ 1) ∘ (1 ⊗ Ψ)` with `β` the Bell-state marginal; `ε` is
/// kept. The GHZ axioms are checked first and the result must map back to
/// `Ψ`.
pub fn observable_from_ghz<S: Scalar>(g: &GHZStructure<S>, label: &str) -> Result<Observable<S>> {
    let report = verify_ghz(g)?;
    if !report.all_pass() {
        return Err(Error::InvalidGhz(format!("failed axioms: {}", report.failures().join(", "))));
    }
    let x = g.object();
    let beta = g.marginal();
    let delta = Morphism::identity(x).tensor(&g.psi).apply_local(&beta.dagger(), 0)?;
    let obs = Observable::validated(label, delta, g.epsilon.clone())
        .map_err(|e| Error::InvalidGhz(format!("recovered comultiplication: {e}")))?;
    if ghz_from_observable(&obs)?.psi != g.psi {
        return Err(Error::InvalidGhz("round trip does not reproduce Ψ".into()));
    }
    Ok(obs)
}

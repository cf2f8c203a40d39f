// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{AbelianGroupSpec, GHZStructure};
use crate::cat_core::Morphism;
use crate::error::{Error, Result};
use crate::frobenius::{eigenstates, phase_group, rescale, Observable};
use crate::scalar::Scalar;

/// What a canonical state is relative to the observable that defines the
/// GHZ state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKind {
    Eigen,
    /// Phase-group element with this index.
    Group(usize),
    Zero,
}

/// The canonical state list: two eigenstates, then the phase-group elements
/// (identity first), all in length-√dim form. The zero state is implicit and
/// takes the index after the last stored state.
#[derive(Clone, Debug)]
pub struct CanonicalStates<S> {
    pub states: Vec<Morphism<S>>,
    pub names: Vec<String>,
    pub kinds: Vec<StateKind>,
    /// Index pairs forming the eigenstates of one observable.
    pub eigen_pairs: Vec<[usize; 2]>,
}

impl<S: Scalar> CanonicalStates<S> {
    /// `obs` fixes the eigenstates and phase group; `others` contribute the
    /// eigenstate pairs found among the group elements.
    pub fn build(obs: &Observable<S>, catalog: &[Morphism<S>], others: &[Observable<S>]) -> Result<Self> {
        let mut eig = eigenstates(obs, catalog)?;
        if eig.len() != 2 {
            return Err(Error::CorrelationTable(format!(
                "expected 2 eigenstates for {}, found {}",
                obs.label,
                eig.len()
            )));
        }
        eig.sort_by_key(first_nonzero);
        let pg = phase_group(obs, catalog)?;
        let mut states = Vec::new();
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        for (i, e) in eig.iter().enumerate() {
            states.push(rescale(obs, e)?);
            names.push(format!("e{i}"));
            kinds.push(StateKind::Eigen);
        }
        for (g, el) in pg.elements.iter().enumerate() {
            states.push(el.clone());
            names.push(format!("ψ{g}"));
            kinds.push(StateKind::Group(g));
        }
        let mut eigen_pairs = vec![[0, 1]];
        for other in others {
            let pair: Vec<usize> = eigenstates(other, catalog)?
                .iter()
                .filter_map(|x| {
                    let r = rescale(obs, x).ok()?;
                    (2..states.len()).find(|&k| states[k].equal_up_to_phase(&r))
                })
                .sorted()
                .collect();
            if let [a, b] = pair[..] {
                if !eigen_pairs.contains(&[a, b]) {
                    eigen_pairs.push([a, b]);
                }
            }
        }
        Ok(CanonicalStates {
            states,
            names,
            kinds,
            eigen_pairs,
        })
    }

    pub fn zero_index(&self) -> usize {
        self.states.len()
    }
}

fn first_nonzero<S: Scalar>(m: &Morphism<S>) -> usize {
    m.entries().iter().position(|e| !e.is_zero()).unwrap_or(usize::MAX)
}

/// GHZ correlation triples over a canonical state list.
///
/// `triples` holds `(i, j, k)` with `(x_i ⊗ x_j ⊗ 1)† ∘ Ψ = w · x_k`, keyed to
/// the weight `w` (absent for symbolic tables). Pairs with a zero third slot
/// go to `vanishing`. `forbidden` holds `(i, j, k)` where `x_k` and the
/// computed third slot are distinct eigenstates of one observable.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationTable {
    pub names: Vec<String>,
    pub kinds: Vec<StateKind>,
    /// JSON of each state: the matrix for concrete tables, the name otherwise.
    pub states: Vec<serde_json::Value>,
    pub eigen_pairs: Vec<[usize; 2]>,
    pub triples: BTreeMap<[usize; 3], Option<serde_json::Value>>,
    pub vanishing: BTreeSet<[usize; 2]>,
    pub forbidden: BTreeSet<[usize; 3]>,
}

impl CorrelationTable {
    fn from_parts(
        names: Vec<String>,
        kinds: Vec<StateKind>,
        states: Vec<serde_json::Value>,
        eigen_pairs: Vec<[usize; 2]>,
        triples: BTreeMap<[usize; 3], Option<serde_json::Value>>,
        vanishing: BTreeSet<[usize; 2]>,
    ) -> Self {
        let mut forbidden = BTreeSet::new();
        for &[i, j, k] in triples.keys() {
            for &[a, b] in &eigen_pairs {
                if k == a {
                    forbidden.insert([i, j, b]);
                } else if k == b {
                    forbidden.insert([i, j, a]);
                }
            }
        }
        CorrelationTable {
            names,
            kinds,
            states,
            eigen_pairs,
            triples,
            vanishing,
            forbidden,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, t: [usize; 3]) -> bool {
        self.triples.contains_key(&t)
    }

    pub fn group_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| matches!(self.kinds[i], StateKind::Group(_))).collect()
    }

    /// Every triple of group elements has all six permutations present.
    pub fn is_permutation_closed(&self) -> bool {
        let group: BTreeSet<usize> = self.group_indices().into_iter().collect();
        self.triples
            .keys()
            .filter(|t| t.iter().all(|i| group.contains(i)))
            .all(|t| t.iter().permutations(3).all(|p| self.contains([*p[0], *p[1], *p[2]])))
    }

    pub fn is_symmetric(&self) -> bool {
        self.triples.keys().all(|&[i, j, k]| self.contains([j, i, k]))
            && self.vanishing.iter().all(|&[i, j]| self.vanishing.contains(&[j, i]))
    }

    /// Short order-independent fingerprint of the triple and vanishing sets.
    pub fn digest(&self) -> String {
        // FNV-1a over the sorted index lists.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: usize| {
            for b in (x as u64).to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x100_0000_01b3);
            }
        };
        for t in self.triples.keys() {
            t.iter().for_each(|&x| feed(x));
        }
        feed(usize::MAX);
        for v in &self.vanishing {
            v.iter().for_each(|&x| feed(x));
        }
        format!("{}t{}v{}f-{h:016x}", self.triples.len(), self.vanishing.len(), self.forbidden.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let triples: Vec<_> = self
            .triples
            .iter()
            .map(|(t, w)| match w {
                Some(w) => serde_json::json!([t[0], t[1], t[2], w]),
                None => serde_json::json!(t),
            })
            .collect();
        serde_json::json!({
            "names": self.names,
            "states": self.states,
            "eigen_pairs": self.eigen_pairs,
            "triples": triples,
            "vanishing": self.vanishing,
            "forbidden": self.forbidden,
        })
    }
}

/// All correlation triples of `g` over `canon`.
pub fn correlation_triples<S: Scalar>(g: &GHZStructure<S>, canon: &CanonicalStates<S>) -> Result<CorrelationTable> {
    let x = g.object();
    let id = Morphism::identity(x);
    let n = canon.states.len();
    let mut triples = BTreeMap::new();
    let mut vanishing = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let probe = canon.states[i].tensor(&canon.states[j]).tensor(&id);
            let y = probe.dagger().compose(&g.psi)?;
            if y.is_zero() {
                vanishing.insert([i, j]);
                continue;
            }
            let (k, w) = (0..n)
                .find_map(|k| canon.states[k].proportionality(&y).map(|w| (k, w)))
                .ok_or_else(|| {
                    Error::CorrelationTable(format!("third slot of ({}, {}) is not a canonical state", canon.names[i], canon.names[j]))
                })?;
            triples.insert([i, j, k], Some(w.to_json()));
        }
    }
    let mut names = canon.names.clone();
    names.push("0".into());
    let mut kinds = canon.kinds.clone();
    kinds.push(StateKind::Zero);
    let mut states: Vec<_> = canon.states.iter().map(Morphism::to_json).collect();
    states.push(Morphism::<S>::zero(x.with_power(0), x).to_json());
    Ok(CorrelationTable::from_parts(names, kinds, states, canon.eigen_pairs.clone(), triples, vanishing))
}

/// The correlation table forced by the phase group alone. `group_pairs` are
/// pairs of group elements known to be eigenstates of one observable; they
/// only affect `forbidden`.
pub fn correlations_from_group(spec: &AbelianGroupSpec, group_pairs: &[[usize; 2]]) -> Result<CorrelationTable> {
    let n = spec.order();
    if group_pairs.iter().flatten().any(|&g| g >= n) {
        return Err(Error::CorrelationTable("group pair out of range".into()));
    }
    let idx = |g: usize| g + 2;
    let mut names = vec!["e0".to_string(), "e1".to_string()];
    let mut kinds = vec![StateKind::Eigen, StateKind::Eigen];
    for g in 0..n {
        names.push(spec.names[g].clone());
        kinds.push(StateKind::Group(g));
    }
    names.push("0".into());
    kinds.push(StateKind::Zero);
    let mut triples = BTreeMap::new();
    let mut vanishing = BTreeSet::new();
    for e in 0..2 {
        triples.insert([e, e, e], None);
        vanishing.insert([e, 1 - e]);
        for g in 0..n {
            triples.insert([e, idx(g), e], None);
            triples.insert([idx(g), e, e], None);
        }
    }
    for a in 0..n {
        for b in 0..n {
            triples.insert([idx(a), idx(b), idx(spec.inverse(spec.mul(a, b)))], None);
        }
    }
    let mut eigen_pairs = vec![[0, 1]];
    eigen_pairs.extend(group_pairs.iter().map(|&[a, b]| [idx(a.min(b)), idx(a.max(b))]));
    let states = names.iter().map(|s| serde_json::Value::from(s.as_str())).collect();
    Ok(CorrelationTable::from_parts(names, kinds, states, eigen_pairs, triples, vanishing))
}

/// A kind-preserving index bijection carrying `a`'s triples and vanishing
/// pairs onto `b`'s, if one exists.
pub fn tables_isomorphic(a: &CorrelationTable, b: &CorrelationTable) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.triples.len() != b.triples.len() || a.vanishing.len() != b.vanishing.len() {
        return None;
    }
    let class = |t: &CorrelationTable, want: fn(&StateKind) -> bool| -> Vec<usize> {
        (0..t.len()).filter(|&i| want(&t.kinds[i])).collect()
    };
    let is_eigen: fn(&StateKind) -> bool = |k| *k == StateKind::Eigen;
    let is_group: fn(&StateKind) -> bool = |k| matches!(k, StateKind::Group(_));
    let is_zero: fn(&StateKind) -> bool = |k| *k == StateKind::Zero;
    let (ae, ag, az) = (class(a, is_eigen), class(a, is_group), class(a, is_zero));
    let (be, bg, bz) = (class(b, is_eigen), class(b, is_group), class(b, is_zero));
    if ae.len() != be.len() || ag.len() != bg.len() || az.len() != bz.len() {
        return None;
    }
    for pe in be.iter().permutations(be.len()) {
        for pg in bg.iter().permutations(bg.len()) {
            let mut map = vec![0; a.len()];
            for (src, dst) in ae.iter().zip(&pe).chain(ag.iter().zip(&pg)) {
                map[*src] = **dst;
            }
            for (src, dst) in az.iter().zip(&bz) {
                map[*src] = *dst;
            }
            let triples_ok = a.triples.keys().all(|t| b.triples.contains_key(&t.map(|i| map[i])));
            let vanishing_ok = a.vanishing.iter().all(|v| b.vanishing.contains(&v.map(|i| map[i])));
            if triples_ok && vanishing_ok {
                return Some(map);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_z4_shape() {
        let t = correlations_from_group(&AbelianGroupSpec::cyclic(4), &[[0, 2]]).unwrap();
        assert_eq!(t.len(), 7);
        // 2 + 2·2·4 eigen triples, 16 group triples.
        assert_eq!(t.triples.len(), 2 + 16 + 16);
        assert_eq!(t.vanishing.len(), 2);
        assert!(t.is_permutation_closed());
        assert!(t.is_symmetric());
        // Identity row: (ψ0, ψ; ψ⁻¹).
        assert!(t.contains([2, 3, 5]));
        assert!(t.contains([2, 4, 4]));
    }

    #[test]
    fn z4_and_klein_tables_differ() {
        let z4 = correlations_from_group(&AbelianGroupSpec::cyclic(4), &[]).unwrap();
        let k = correlations_from_group(&AbelianGroupSpec::klein(), &[]).unwrap();
        assert!(tables_isomorphic(&z4, &z4).is_some());
        assert!(tables_isomorphic(&z4, &k).is_none());
    }

    #[test]
    fn forbidden_from_pairs() {
        let t = correlations_from_group(&AbelianGroupSpec::cyclic(4), &[[0, 2]]).unwrap();
        // (ψ0, ψ0; ψ0) is a triple, so (ψ0, ψ0; ψ2) is forbidden.
        assert!(t.forbidden.contains(&[2, 2, 4]));
        assert!(t.forbidden.contains(&[0, 0, 1]));
        assert!(t.forbidden.iter().all(|f| !t.contains(*f)));
    }
}

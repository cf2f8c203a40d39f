// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::TheoryObject;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A morphism `dom → cod`: a `dim(cod) × dim(dom)` matrix stored row-major.
///
/// States are morphisms out of the unit (`dom.power == 0`), effects are
/// morphisms into it, numbers are `I → I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism<S> {
    dom: TheoryObject,
    cod: TheoryObject,
    entries: Vec<S>,
}

impl<S: Scalar> Morphism<S> {
    pub fn new(dom: TheoryObject, cod: TheoryObject, entries: Vec<S>) -> Result<Self> {
        if entries.len() != dom.dim() * cod.dim() {
            return Err(Error::Shape(format!(
                "{} entries for a {} × {} matrix",
                entries.len(),
                cod.dim(),
                dom.dim()
            )));
        }
        Ok(Morphism { dom, cod, entries })
    }

    pub fn from_fn(
        dom: TheoryObject,
        cod: TheoryObject,
        mut f: impl FnMut(usize, usize) -> S,
    ) -> Self {
        let (rows, cols) = (cod.dim(), dom.dim());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Morphism { dom, cod, entries }
    }

    pub fn zero(dom: TheoryObject, cod: TheoryObject) -> Self {
        Morphism {
            dom,
            cod,
            entries: vec![S::zero(); dom.dim() * cod.dim()],
        }
    }

    pub fn identity(obj: TheoryObject) -> Self {
        Self::from_fn(obj, obj, |r, c| if r == c { S::one() } else { S::zero() })
    }

    /// A state `I → obj` with the given amplitudes.
    pub fn state(obj: TheoryObject, amplitudes: Vec<S>) -> Result<Self> {
        Self::new(TheoryObject::unit(obj.base_dim), obj, amplitudes)
    }

    /// The basis state `|index⟩`.
    pub fn basis_state(obj: TheoryObject, index: usize) -> Self {
        Self::from_fn(TheoryObject::unit(obj.base_dim), obj, |r, _| {
            if r == index {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    /// A number `I → I`.
    pub fn scalar(base_dim: usize, value: S) -> Self {
        let i = TheoryObject::unit(base_dim);
        Morphism {
            dom: i,
            cod: i,
            entries: vec![value],
        }
    }

    /// The symmetry `σ_{A,B}: A ⊗ B → B ⊗ A`.
    pub fn swap(a: TheoryObject, b: TheoryObject) -> Self {
        let (da, db) = (a.dim(), b.dim());
        Self::from_fn(a.tensor(&b), b.tensor(&a), |r, c| {
            let (rb, ra) = (r / da, r % da);
            let (ca, cb) = (c / db, c % db);
            if ra == ca && rb == cb {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    /// Wire permutation on `obj.power` wires: output wire `j` carries input
    /// wire `perm[j]`.
    pub fn permute_wires(obj: TheoryObject, perm: &[usize]) -> Result<Self> {
        let n = obj.power as usize;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation of {n} wires")));
        }
        let d = obj.base_dim;
        let digits = |mut x: usize| {
            let mut ds = vec![0; n];
            for slot in ds.iter_mut().rev() {
                *slot = x % d;
                x /= d;
            }
            ds
        };
        let mut m = Self::zero(obj, obj);
        for c in 0..obj.dim() {
            let ins = digits(c);
            let r = perm.iter().fold(0, |acc, &p| acc * d + ins[p]);
            m.entries[r * obj.dim() + c] = S::one();
        }
        Ok(m)
    }

    pub fn dom(&self) -> TheoryObject {
        self.dom
    }

    pub fn cod(&self) -> TheoryObject {
        self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.dim()
    }

    pub fn cols(&self) -> usize {
        self.dom.dim()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.cols() + col]
    }

    /// Column `col` as a state.
    pub fn column(&self, col: usize) -> Morphism<S> {
        Morphism::from_fn(TheoryObject::unit(self.dom.base_dim), self.cod, |r, _| {
            self.get(r, col).clone()
        })
    }

    /// The entry of a number `I → I`.
    pub fn as_scalar(&self) -> Option<&S> {
        (self.dom.is_unit() && self.cod.is_unit()).then(|| &self.entries[0])
    }

    pub fn is_state(&self) -> bool {
        self.dom.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism<S>) -> Result<Morphism<S>> {
        if f.cod != self.dom {
            return Err(Error::TypeMismatch {
                op: "compose",
                expected: self.dom.to_string(),
                found: f.cod.to_string(),
            });
        }
        let (rows, inner, cols) = (self.rows(), self.cols(), f.cols());
        let mut out = vec![S::zero(); rows * cols];
        for r in 0..rows {
            let row = &mut out[r * cols..(r + 1) * cols];
            for k in 0..inner {
                let a = &self.entries[r * inner + k];
                if a.is_zero() {
                    continue;
                }
                for (c, slot) in row.iter_mut().enumerate() {
                    let b = &f.entries[k * cols + c];
                    if !b.is_zero() {
                        *slot = slot.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(Morphism {
            dom: f.dom,
            cod: self.cod,
            entries: out,
        })
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn tensor(&self, other: &Morphism<S>) -> Morphism<S> {
        let (r2, c2) = (other.rows(), other.cols());
        Morphism::from_fn(self.dom.tensor(&other.dom), self.cod.tensor(&other.cod), |r, c| {
            let a = self.get(r / r2, c / c2);
            if a.is_zero() {
                return S::zero();
            }
            a.mul(other.get(r % r2, c % c2))
        })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Morphism<S> {
        Morphism::from_fn(self.cod, self.dom, |r, c| self.get(c, r).dagger())
    }

    pub fn scale(&self, s: &S) -> Morphism<S> {
        Morphism {
            dom: self.dom,
            cod: self.cod,
            entries: self.entries.iter().map(|x| s.mul(x)).collect(),
        }
    }

    pub fn add(&self, other: &Morphism<S>) -> Result<Morphism<S>> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::TypeMismatch {
                op: "add",
                expected: format!("{} → {}", self.dom, self.cod),
                found: format!("{} → {}", other.dom, other.cod),
            });
        }
        Ok(Morphism {
            dom: self.dom,
            cod: self.cod,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    /// `(1_{before} ⊗ gate ⊗ 1_{after}) ∘ self`, where `gate` acts on the
    /// output wires `offset .. offset + gate.dom.power`, computed without
    /// materializing the Kronecker product.
    pub fn apply_local(&self, gate: &Morphism<S>, offset: u32) -> Result<Morphism<S>> {
        let n = self.cod.power;
        let g_in = gate.dom.power;
        if offset + g_in > n || gate.dom.base_dim != self.cod.base_dim {
            return Err(Error::TypeMismatch {
                op: "apply_local",
                expected: format!("gate on wires {offset}..{} of {}", offset + g_in, self.cod),
                found: format!("{} → {}", gate.dom, gate.cod),
            });
        }
        let d = self.cod.base_dim;
        let lo = d.pow(n - offset - g_in);
        let gin_dim = gate.cols();
        let gout_dim = gate.rows();
        let cod = self.cod.with_power(n - g_in + gate.cod.power);
        let cols = self.cols();
        let mut out = vec![S::zero(); cod.dim() * cols];
        for r in 0..self.rows() {
            let (hi, rest) = (r / (gin_dim * lo), r % (gin_dim * lo));
            let (mid, low) = (rest / lo, rest % lo);
            for c in 0..cols {
                let x = &self.entries[r * cols + c];
                if x.is_zero() {
                    continue;
                }
                for g_row in 0..gout_dim {
                    let g = gate.get(g_row, mid);
                    if g.is_zero() {
                        continue;
                    }
                    let nr = (hi * gout_dim + g_row) * lo + low;
                    let slot = &mut out[nr * cols + c];
                    *slot = slot.add(&g.mul(x));
                }
            }
        }
        Ok(Morphism {
            dom: self.dom,
            cod,
            entries: out,
        })
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|x| !x.is_zero())
    }

    /// A representative of the phase class that is invariant under
    /// multiplication by unit-modulus scalars: `self · dagger(first nonzero)`.
    pub fn phase_key(&self) -> Morphism<S> {
        match self.first_nonzero() {
            Some(p) => self.scale(&self.entries[p].dagger()),
            None => self.clone(),
        }
    }

    /// `g = u·f` for some `u` with `|u| = 1`.
    pub fn equal_up_to_phase(&self, other: &Morphism<S>) -> bool {
        if self.dom != other.dom || self.cod != other.cod {
            return false;
        }
        match (self.first_nonzero(), other.first_nonzero()) {
            (None, None) => true,
            (Some(p), Some(q)) if p == q => {
                self.entries[p].same_modulus(&other.entries[q])
                    && self.phase_key() == other.phase_key()
            }
            _ => false,
        }
    }

    /// Multiplies by the phase that makes the first nonzero entry a preferred
    /// representative (positive real where possible).
    ///
    /// Only phase-invariant when every phase-equivalent input reaches the same
    /// representative; use [`Morphism::phase_key`] for general comparison.
    pub fn canonical_phase(&self) -> Morphism<S> {
        match self.first_nonzero() {
            Some(p) => self.scale(&self.entries[p].phase_normalizer()),
            None => self.clone(),
        }
    }

    /// The scalar `c` with `other = c · self`, if any. Both must be nonzero.
    pub fn proportionality(&self, other: &Morphism<S>) -> Option<S> {
        if self.dom != other.dom || self.cod != other.cod {
            return None;
        }
        let p = self.first_nonzero()?;
        let c = other.entries[p].checked_div(&self.entries[p])?;
        (!c.is_zero() && self.scale(&c) == *other).then_some(c)
    }

    /// `dagger(self) ∘ self` for a state, as a number.
    pub fn norm_squared(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, x| acc.add(&x.dagger().mul(x)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.rows())
            .map(|r| {
                serde_json::Value::Array(
                    (0..self.cols()).map(|c| self.get(r, c).to_json()).collect(),
                )
            })
            .collect();
        serde_json::json!({
            "dom": self.dom.power,
            "cod": self.cod.power,
            "base": self.dom.base_dim,
            "entries": rows,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let field = |k: &str| {
            value
                .get(k)
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Json(format!("morphism field `{k}` missing or not an integer")))
        };
        let base = field("base")? as usize;
        if base == 0 {
            return Err(Error::Json("base must be positive".into()));
        }
        let dom = TheoryObject::new(field("dom")? as u32, base);
        let cod = TheoryObject::new(field("cod")? as u32, base);
        let rows = value
            .get("entries")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("morphism field `entries` missing".into()))?;
        let mut entries = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Json("entry row is not an array".into()))?;
            if row.len() != dom.dim() {
                return Err(Error::Shape(format!("row of length {} for domain {dom}", row.len())));
            }
            for x in row {
                entries.push(S::from_json(x)?);
            }
        }
        Morphism::new(dom, cod, entries)
    }
}

impl<S: fmt::Display> fmt::Display for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} → {}", self.dom, self.cod)?;
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        let (rows, cols) = (self.cod.dim(), self.dom.dim());
        for r in 0..rows {
            let row: Vec<String> = (0..cols)
                .map(|c| format!("{:>width$}", cells[r * cols + c]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} {:?}", self.dom, self.cod, self.entries)
    }
}

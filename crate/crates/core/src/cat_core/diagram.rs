// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;

use super::{Morphism, TheoryObject};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The concrete interpretation of the diagram constructors.
#[derive(Clone, Debug)]
pub struct Generators<S> {
    pub base_dim: usize,
    pub delta: Morphism<S>,
    pub epsilon: Morphism<S>,
    pub named: BTreeMap<String, Morphism<S>>,
}

impl<S: Scalar> Generators<S> {
    pub fn object(&self, power: u32) -> TheoryObject {
        TheoryObject::new(power, self.base_dim)
    }

    fn named(&self, name: &str) -> Result<&Morphism<S>> {
        self.named.get(name).ok_or_else(|| Error::TypeMismatch {
            op: "evaluate",
            expected: "a known generator".into(),
            found: name.to_string(),
        })
    }
}

/// A term of the diagrammatic language over one generating object `Q`.
///
/// `Id(n)` is the identity on `Q^⊗n`; `Swap` is `σ_{Q,Q}`; `Delta` and
/// `Epsilon` are the comultiplication `Q → Q⊗Q` and counit `Q → I` of the
/// bound observable; `Gen` looks up a named morphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiagramTerm {
    Id(u32),
    Swap,
    Delta,
    Epsilon,
    DeltaDag,
    EpsilonDag,
    Gen(String),
    /// `Compose(g, f)` is `g ∘ f`.
    Compose(Box<DiagramTerm>, Box<DiagramTerm>),
    Tensor(Box<DiagramTerm>, Box<DiagramTerm>),
}

impl DiagramTerm {
    pub fn compose(g: DiagramTerm, f: DiagramTerm) -> DiagramTerm {
        DiagramTerm::Compose(Box::new(g), Box::new(f))
    }

    pub fn tensor(f: DiagramTerm, g: DiagramTerm) -> DiagramTerm {
        DiagramTerm::Tensor(Box::new(f), Box::new(g))
    }

    pub fn gen(name: &str) -> DiagramTerm {
        DiagramTerm::Gen(name.to_string())
    }

    /// `(dom power, cod power)`, checking every `Compose` node.
    pub fn signature<S: Scalar>(&self, gens: &Generators<S>) -> Result<(u32, u32)> {
        Ok(match self {
            DiagramTerm::Id(n) => (*n, *n),
            DiagramTerm::Swap => (2, 2),
            DiagramTerm::Delta => (1, 2),
            DiagramTerm::DeltaDag => (2, 1),
            DiagramTerm::Epsilon => (1, 0),
            DiagramTerm::EpsilonDag => (0, 1),
            DiagramTerm::Gen(name) => {
                let m = gens.named(name)?;
                (m.dom().power, m.cod().power)
            }
            DiagramTerm::Compose(g, f) => {
                let (gd, gc) = g.signature(gens)?;
                let (fd, fc) = f.signature(gens)?;
                if fc != gd {
                    return Err(Error::TypeMismatch {
                        op: "compose",
                        expected: gens.object(gd).to_string(),
                        found: gens.object(fc).to_string(),
                    });
                }
                (fd, gc)
            }
            DiagramTerm::Tensor(f, g) => {
                let (fd, fc) = f.signature(gens)?;
                let (gd, gc) = g.signature(gens)?;
                (fd + gd, fc + gc)
            }
        })
    }

    /// The matrix denotation.
    pub fn evaluate<S: Scalar>(&self, gens: &Generators<S>) -> Result<Morphism<S>> {
        let q = gens.object(1);
        Ok(match self {
            DiagramTerm::Id(n) => Morphism::identity(gens.object(*n)),
            DiagramTerm::Swap => Morphism::swap(q, q),
            DiagramTerm::Delta => gens.delta.clone(),
            DiagramTerm::DeltaDag => gens.delta.dagger(),
            DiagramTerm::Epsilon => gens.epsilon.clone(),
            DiagramTerm::EpsilonDag => gens.epsilon.dagger(),
            DiagramTerm::Gen(name) => gens.named(name)?.clone(),
            DiagramTerm::Compose(g, f) => g.evaluate(gens)?.compose(&f.evaluate(gens)?)?,
            DiagramTerm::Tensor(f, g) => f.evaluate(gens)?.tensor(&g.evaluate(gens)?),
        })
    }

    /// Number of δ/ε/δ†/ε†/named-generator nodes.
    pub fn node_count(&self) -> usize {
        match self {
            DiagramTerm::Id(_) | DiagramTerm::Swap => 0,
            DiagramTerm::Compose(a, b) | DiagramTerm::Tensor(a, b) => a.node_count() + b.node_count(),
            _ => 1,
        }
    }

    /// The wiring graph of the term: which boundary ports and nodes are
    /// linked through wires.
    pub fn wiring<S: Scalar>(&self, gens: &Generators<S>) -> Result<Wiring> {
        let mut w = Wiring::default();
        let (ins, outs) = w.build(self, gens)?;
        w.inputs = ins;
        w.outputs = outs;
        Ok(w)
    }

    /// Whether the wiring graph has exactly one connected component.
    pub fn is_connected<S: Scalar>(&self, gens: &Generators<S>) -> Result<bool> {
        Ok(self.wiring(gens)?.component_count() == 1)
    }
}

impl fmt::Display for DiagramTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramTerm::Id(n) => write!(f, "1_{n}"),
            DiagramTerm::Swap => f.write_str("σ"),
            DiagramTerm::Delta => f.write_str("δ"),
            DiagramTerm::Epsilon => f.write_str("ε"),
            DiagramTerm::DeltaDag => f.write_str("δ†"),
            DiagramTerm::EpsilonDag => f.write_str("ε†"),
            DiagramTerm::Gen(name) => f.write_str(name),
            DiagramTerm::Compose(g, h) => write!(f, "({g} ∘ {h})"),
            DiagramTerm::Tensor(g, h) => write!(f, "({g} ⊗ {h})"),
        }
    }
}

/// Union-find over wire segments and nodes of a diagram term.
#[derive(Debug, Default, Clone)]
pub struct Wiring {
    parent: Vec<usize>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl Wiring {
    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn build<S: Scalar>(
        &mut self,
        term: &DiagramTerm,
        gens: &Generators<S>,
    ) -> Result<(Vec<usize>, Vec<usize>)> {
        let node = |w: &mut Wiring, ins: u32, outs: u32| {
            let x = w.fresh();
            (vec![x; ins as usize], vec![x; outs as usize])
        };
        Ok(match term {
            DiagramTerm::Id(n) => {
                let wires: Vec<usize> = (0..*n).map(|_| self.fresh()).collect();
                (wires.clone(), wires)
            }
            DiagramTerm::Swap => {
                let (a, b) = (self.fresh(), self.fresh());
                (vec![a, b], vec![b, a])
            }
            DiagramTerm::Delta => node(self, 1, 2),
            DiagramTerm::DeltaDag => node(self, 2, 1),
            DiagramTerm::Epsilon => node(self, 1, 0),
            DiagramTerm::EpsilonDag => node(self, 0, 1),
            DiagramTerm::Gen(_) => {
                let (d, c) = term.signature(gens)?;
                node(self, d, c)
            }
            DiagramTerm::Compose(g, f) => {
                let (f_in, f_out) = self.build(f, gens)?;
                let (g_in, g_out) = self.build(g, gens)?;
                if f_out.len() != g_in.len() {
                    return Err(Error::TypeMismatch {
                        op: "compose",
                        expected: format!("{} wires", g_in.len()),
                        found: format!("{} wires", f_out.len()),
                    });
                }
                for (a, b) in f_out.iter().zip(&g_in) {
                    self.union(*a, *b);
                }
                (f_in, g_out)
            }
            DiagramTerm::Tensor(f, g) => {
                let (mut f_in, mut f_out) = self.build(f, gens)?;
                let (g_in, g_out) = self.build(g, gens)?;
                f_in.extend(g_in);
                f_out.extend(g_out);
                (f_in, f_out)
            }
        })
    }

    /// Number of connected components (zero for the empty diagram).
    pub fn component_count(&self) -> usize {
        let mut w = self.clone();
        let n = w.parent.len();
        let mut roots: Vec<usize> = (0..n).map(|x| w.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BoolScalar;

    fn gens() -> Generators<BoolScalar> {
        let q = TheoryObject::new(1, 2);
        let delta = Morphism::from_fn(q, q.with_power(2), |r, c| BoolScalar(r == 3 * c));
        let epsilon = Morphism::from_fn(q, q.with_power(0), |_, _| BoolScalar(true));
        Generators {
            base_dim: 2,
            delta,
            epsilon,
            named: BTreeMap::new(),
        }
    }

    #[test]
    fn connectivity() {
        let g = gens();
        let t = DiagramTerm::compose(DiagramTerm::DeltaDag, DiagramTerm::Delta);
        assert!(t.is_connected(&g).unwrap());
        let t = DiagramTerm::tensor(DiagramTerm::Id(1), DiagramTerm::Delta);
        assert!(!t.is_connected(&g).unwrap());
        let t = DiagramTerm::compose(DiagramTerm::Epsilon, DiagramTerm::EpsilonDag);
        assert!(t.is_connected(&g).unwrap());
        assert!(!DiagramTerm::Id(0).is_connected(&g).unwrap());
    }

    #[test]
    fn ill_typed_compose() {
        let g = gens();
        let t = DiagramTerm::compose(DiagramTerm::Delta, DiagramTerm::Delta);
        assert!(matches!(t.signature(&g), Err(Error::TypeMismatch { .. })));
        assert!(t.evaluate(&g).is_err());
    }

    #[test]
    fn id_term_is_identity() {
        let g = gens();
        let m = DiagramTerm::Id(2).evaluate(&g).unwrap();
        assert_eq!(m, Morphism::identity(TheoryObject::new(2, 2)));
    }
}

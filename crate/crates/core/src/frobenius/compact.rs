// SPDX-License-Identifier: Apache-2.0

use super::Observable;
use crate::cat_core::{Morphism, TheoryObject};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A self-dual compact structure `η: I → X ⊗ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactStructure<S> {
    object: TheoryObject,
    eta: Morphism<S>,
}

impl<S: Scalar> CompactStructure<S> {
    /// Requires the snake equation `(η† ⊗ 1) ∘ (1 ⊗ η) = 1` and `σ ∘ η = η`.
    pub fn new(eta: Morphism<S>) -> Result<Self> {
        let cod = eta.cod();
        if !eta.dom().is_unit() || cod.power % 2 != 0 || cod.power == 0 {
            return Err(Error::InvalidCompact(format!("η must be I → X⊗X, got {} → {cod}", eta.dom())));
        }
        let object = cod.with_power(cod.power / 2);
        if !snake_holds(&eta, object)? {
            return Err(Error::InvalidCompact("snake equation fails".into()));
        }
        if eta.apply_local(&Morphism::swap(object, object), 0)? != eta {
            return Err(Error::InvalidCompact("η is not symmetric".into()));
        }
        Ok(CompactStructure { object, eta })
    }

    /// The trivial structure on the unit object.
    pub fn unit(base_dim: usize) -> Self {
        let i = TheoryObject::unit(base_dim);
        CompactStructure {
            object: i,
            eta: Morphism::identity(i),
        }
    }

    pub fn object(&self) -> TheoryObject {
        self.object
    }

    pub fn eta(&self) -> &Morphism<S> {
        &self.eta
    }

    /// `η_{A⊗B} = (1_A ⊗ σ_{A,B} ⊗ 1_B) ∘ (η_A ⊗ η_B)`, ordered `A B A B`.
    pub fn tensor(&self, other: &CompactStructure<S>) -> Result<CompactStructure<S>> {
        let (a, b) = (self.object, other.object);
        let eta = self
            .eta
            .tensor(&other.eta)
            .apply_local(&Morphism::swap(a, b), a.power)?;
        Ok(CompactStructure {
            object: a.tensor(&b),
            eta,
        })
    }
}

fn snake_holds<S: Scalar>(eta: &Morphism<S>, x: TheoryObject) -> Result<bool> {
    let id = Morphism::identity(x);
    let snake = id.tensor(eta).apply_local(&eta.dagger(), 0)?;
    Ok(snake == id)
}

/// `η = δ ∘ ε†`, checked as a compact structure.
pub fn induced_eta<S: Scalar>(obs: &Observable<S>) -> Result<CompactStructure<S>> {
    CompactStructure::new(obs.eta())
}

fn check_ends<S: Scalar>(
    f: &Morphism<S>,
    ca: &CompactStructure<S>,
    cb: &CompactStructure<S>,
) -> Result<()> {
    if f.dom() != ca.object || f.cod() != cb.object {
        return Err(Error::TypeMismatch {
            op: "transpose",
            expected: format!("{} → {}", ca.object, cb.object),
            found: format!("{} → {}", f.dom(), f.cod()),
        });
    }
    Ok(())
}

/// `f^* = (η_B† ⊗ 1_A) ∘ (1_B ⊗ f ⊗ 1_A) ∘ (1_B ⊗ η_A)`, a morphism `B → A`.
pub fn transpose<S: Scalar>(
    f: &Morphism<S>,
    ca: &CompactStructure<S>,
    cb: &CompactStructure<S>,
) -> Result<Morphism<S>> {
    check_ends(f, ca, cb)?;
    let b = cb.object;
    Morphism::identity(b)
        .tensor(&ca.eta)
        .apply_local(f, b.power)?
        .apply_local(&cb.eta.dagger(), 0)
}

/// `f_* = (η_A† ⊗ 1_B) ∘ (1_A ⊗ f† ⊗ 1_B) ∘ (1_A ⊗ η_B)`, a morphism `A → B`.
pub fn conjugate<S: Scalar>(
    f: &Morphism<S>,
    ca: &CompactStructure<S>,
    cb: &CompactStructure<S>,
) -> Result<Morphism<S>> {
    check_ends(f, ca, cb)?;
    let a = ca.object;
    Morphism::identity(a)
        .tensor(&cb.eta)
        .apply_local(&f.dagger(), a.power)?
        .apply_local(&ca.eta.dagger(), 0)
}

/// `x_* = (x† ⊗ 1) ∘ η` for a state `x`.
pub fn conjugate_state<S: Scalar>(x: &Morphism<S>, c: &CompactStructure<S>) -> Result<Morphism<S>> {
    conjugate(x, &CompactStructure::unit(x.cod().base_dim), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloScalar;

    fn q() -> TheoryObject {
        TheoryObject::new(1, 2)
    }

    fn bell(sign: i64) -> Morphism<CycloScalar> {
        let c = |x| CycloScalar::from_int(x);
        Morphism::state(q().with_power(2), vec![c(1), c(0), c(0), c(sign)]).unwrap()
    }

    fn sample() -> Morphism<CycloScalar> {
        let e = |a: [i64; 4]| CycloScalar::new(a, 1);
        Morphism::new(q(), q(), vec![e([1, 2, 0, 0]), e([0, 0, 1, 0]), e([3, 0, 0, 1]), e([0, -1, 0, 0])])
            .unwrap()
    }

    #[test]
    fn bell_states_are_compact() {
        assert!(CompactStructure::new(bell(1)).is_ok());
        assert!(CompactStructure::new(bell(-1)).is_ok());
        let not_bell = Morphism::state(
            q().with_power(2),
            vec![CycloScalar::one(), CycloScalar::one(), CycloScalar::zero(), CycloScalar::zero()],
        )
        .unwrap();
        assert!(CompactStructure::new(not_bell).is_err());
    }

    #[test]
    fn transpose_is_matrix_transpose_for_real_bell() {
        let c = CompactStructure::new(bell(1)).unwrap();
        let f = sample();
        let t = transpose(&f, &c, &c).unwrap();
        assert_eq!(t, Morphism::from_fn(q(), q(), |r, col| f.get(col, r).clone()));
        assert_eq!(transpose(&t, &c, &c).unwrap(), f);
    }

    #[test]
    fn conjugate_is_dagger_of_transpose() {
        for sign in [1, -1] {
            let c = CompactStructure::new(bell(sign)).unwrap();
            let f = sample();
            let lower = conjugate(&f, &c, &c).unwrap();
            assert_eq!(lower, transpose(&f, &c, &c).unwrap().dagger());
        }
    }

    #[test]
    fn state_conjugate_is_complex_conjugate() {
        let c = CompactStructure::new(bell(1)).unwrap();
        let x = Morphism::state(q(), vec![CycloScalar::one(), CycloScalar::i()]).unwrap();
        let y = conjugate_state(&x, &c).unwrap();
        assert_eq!(y, Morphism::state(q(), vec![CycloScalar::one(), CycloScalar::i().neg()]).unwrap());
    }

    #[test]
    fn tensor_structure_is_compact() {
        let c = CompactStructure::new(bell(-1)).unwrap();
        let cc = c.tensor(&c).unwrap();
        assert!(CompactStructure::new(cc.eta().clone()).is_ok());
    }
}

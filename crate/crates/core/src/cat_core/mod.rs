// SPDX-License-Identifier: Apache-2.0

//! The dagger symmetric monoidal engine.
//!
//! Objects are tensor powers of one generating object, morphisms are dense
//! matrices over a [`Scalar`](crate::scalar::Scalar). Tensor products use the
//! lexicographic index convention: the left factor is the most significant
//! digit of a row or column index.

mod diagram;
mod morphism;
mod object;

pub use diagram::{DiagramTerm, Generators, Wiring};
pub use morphism::Morphism;
pub use object::TheoryObject;

use crate::error::Result;
use crate::scalar::Scalar;

/// `g ∘ f`.
pub fn compose<S: Scalar>(g: &Morphism<S>, f: &Morphism<S>) -> Result<Morphism<S>> {
    g.compose(f)
}

pub fn tensor<S: Scalar>(f: &Morphism<S>, g: &Morphism<S>) -> Morphism<S> {
    f.tensor(g)
}

pub fn dagger<S: Scalar>(f: &Morphism<S>) -> Morphism<S> {
    f.dagger()
}

/// Equality in the quotient that forgets global phases.
pub fn equal_up_to_phase<S: Scalar>(f: &Morphism<S>, g: &Morphism<S>) -> bool {
    f.equal_up_to_phase(g)
}

pub fn evaluate<S: Scalar>(term: &DiagramTerm, gens: &Generators<S>) -> Result<Morphism<S>> {
    term.evaluate(gens)
}

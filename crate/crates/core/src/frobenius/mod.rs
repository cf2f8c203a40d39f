// SPDX-License-Identifier: Apache-2.0

//! Observables as commutative isometric dagger Frobenius comonoids, their
//! eigenstates and unbiased states, the phase group, the induced compact
//! structure and the spider normal form.
//!
//! Stored states are unit-normalized (`x† ∘ x = 1`). Wherever a definition
//! asks for length √dim (unbiasedness, phase-group elements, correlation
//! triples) the state is rescaled by [`Observable::sqrt_dim`] at the point
//! of use.

mod compact;
mod observable;
mod phase;
mod spider;
mod states;

pub use compact::{conjugate, conjugate_state, induced_eta, transpose, CompactStructure};
pub use observable::{check_observable, lift_tensor, Observable, ObservableReport};
pub use phase::{inverses_are_conjugates, phase_group, PhaseGroup};
pub use spider::{
    connected_diagram, spider_canonical, spider_property_test, LayeredDiagram, Node, SpiderReport,
    SpiderShape, MAX_NODES, MAX_WIRES,
};
pub use states::{
    action, conjugate_of, eigenstates, eigenstates_direct, eigenstates_from_catalog, is_eigenstate,
    is_unbiased, is_unitary, multiply, rescale, unbiased_states, StateCatalog, StateRole,
};

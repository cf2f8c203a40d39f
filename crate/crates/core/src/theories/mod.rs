// SPDX-License-Identifier: Apache-2.0

//! The two concrete theories and their enumerations.

mod binding;

pub use binding::{spek, stab, TheoryBinding, TheoryName, SINGLE_GROUP_ORDER};
mod states;

pub use states::{enumerate_states, StateSpace, DEFAULT_DEPTH_BOUND};
mod observables;

pub use observables::{
    group_block_candidates, relational_observables_brute_force, relational_observables_structured,
    spek_observables, stab_observables, OBSERVABLE_LABELS,
};
mod muqt;

pub use muqt::{verify_muqt, verify_muqt_parts, Concrete, MuqtReport, Theory};

// SPDX-License-Identifier: Apache-2.0

//! GHZ structures, their correspondence with observables, correlation
//! triples and finite abelian group classification.

mod group;

pub use group::{classify_group, AbelianGroupSpec, IsoClass};
mod structure;

pub use structure::{ghz_from_observable, observable_from_ghz, verify_ghz, GHZStructure, GhzReport};
mod correlation;

pub use correlation::{
    correlation_triples, correlations_from_group, tables_isomorphic, CanonicalStates, CorrelationTable, StateKind,
};

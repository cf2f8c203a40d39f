// SPDX-License-Identifier: Apache-2.0

//! Exact computations in dagger-symmetric monoidal categories of quantum and
//! toy-theory processes: observables, phase groups, GHZ states and
//! hidden-variable feasibility.

pub mod cat_core;
pub mod error;
pub mod frobenius;
pub mod ghz;
pub mod lhv;
pub mod report;
pub mod scalar;
pub mod theories;

pub use cat_core::{DiagramTerm, Generators, Morphism, TheoryObject};
pub use error::{Error, Result};
pub use frobenius::{Observable, PhaseGroup};
pub use ghz::{AbelianGroupSpec, CorrelationTable, GHZStructure, IsoClass};
pub use lhv::{BornTable, LhvCertificate, ParityCertificate};
pub use report::ComparisonReport;
pub use theories::{StateSpace, Theory, TheoryBinding, TheoryName};
pub use scalar::{BoolScalar, CycloScalar, Rational, Scalar, ScalarKind};

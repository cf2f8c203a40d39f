// SPDX-License-Identifier: Apache-2.0

//! Local hidden-variable representability of multi-site tables.

mod born;
mod instance;
mod mermin;
mod simplex;

pub use born::{born_table, BornRule, BornTable, BornWeight};
pub use instance::{
    consistent_assignments, lhv_feasibility, lhv_feasibility_instance, possibilistic_lhv, verify_certificate,
    verify_possibilistic, LhvCertificate, LhvInstance, LhvOptions, Row, Verdict, Witness,
};
pub use mermin::{mermin_certificate, parity_equations, ParityCertificate, ParityEquation, PARITY_OBSERVABLES};
pub use simplex::{phase_one, Feasibility, SimplexResult, MAX_PIVOTS};

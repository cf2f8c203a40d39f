// SPDX-License-Identifier: Apache-2.0

//! Inputs shared by the benchmarks, built once per process.

use std::sync::OnceLock;

use phaselab_core::lhv::BornTable;
use phaselab_core::report::ghz_born_table;
use phaselab_core::theories::Theory;
use phaselab_core::{BoolScalar, CycloScalar};

pub fn stab() -> &'static Theory<CycloScalar> {
    static T: OnceLock<Theory<CycloScalar>> = OnceLock::new();
    T.get_or_init(|| Theory::build().expect("stab builds"))
}

pub fn spek() -> &'static Theory<BoolScalar> {
    static T: OnceLock<Theory<BoolScalar>> = OnceLock::new();
    T.get_or_init(|| Theory::build().expect("spek builds"))
}

/// Born table of the stabiliser GHZ state.
pub fn stab_ghz_table() -> BornTable {
    ghz_born_table(stab()).expect("stab table")
}

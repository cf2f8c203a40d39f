// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("type mismatch in {op}: expected {expected}, found {found}")]
    TypeMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("ring error: {0}")]
    Ring(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("invalid compact structure: {0}")]
    InvalidCompact(String),
    #[error("invalid GHZ structure: {0}")]
    InvalidGhz(String),
    #[error("not a finite abelian group: {0}")]
    NotAGroup(String),
    #[error("phase group does not close: {0}")]
    PhaseGroupClosure(String),
    #[error("enumeration: {0}")]
    Enumeration(String),
    #[error("invalid born table: {0}")]
    BornTable(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("malformed correlation table: {0}")]
    CorrelationTable(String),
    #[error("check `{id}` failed: {detail}")]
    Check { id: String, detail: String },
    #[error("unknown theory `{0}` (expected `stab` or `spek`)")]
    UnknownTheory(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

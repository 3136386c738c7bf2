//! Finite unary semigroups given by Cayley tables, their epigroup structure,
//! word evaluation and exhaustive identity checking.

mod epigroup;
mod eval;
mod laws;
mod table;

pub use epigroup::{
    cyclic_data, derive_epigroup, epigroup_profile, gr_right_ideal, nil_profile, CyclicData,
    EpigroupProfile, FiniteEpigroup, NilProfile, RightIdealCheck, UnaryMismatch,
};
pub use eval::{
    eval_word, holds, satisfies, satisfies_compiled, satisfies_system, Assignment, CheckConfig,
    CompiledIdentity, Satisfaction, SystemFailure, SystemSatisfaction,
};
pub use laws::{check_epigroup_laws, epigroup_laws, Law, LawViolation};
pub use table::{
    dual, render_table, validate_table, CayleyTable, FiniteUnarySemigroup, TableFile, UnaryAlgebra,
};

use thiserror::Error;

use crate::terms::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    Associativity { a: String, b: String, c: String },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("table file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("letter `{0}` has no value")]
    UnboundLetter(Letter),
    #[error("check needs {required} assignments, limit is {limit}")]
    ResourceGuard { required: u128, limit: u64 },
}

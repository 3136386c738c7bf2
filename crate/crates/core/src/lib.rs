//! Computing with finite epigroups and identities of unary semigroups.
//!
//! The crate is organized around six modules:
//!
//! * [`terms`]: unary words, identities and identity systems;
//! * [`model`]: finite unary semigroups given by Cayley tables, their
//!   epigroup structure (idempotent powers, pseudoinverses, group elements)
//!   and exhaustive identity checking;
//! * [`identities`]: classification of identity systems, the
//!   fresh-letter padding transformation and degree witnesses;
//! * [`rewrite`]: one-letter normal forms `x^p x'^q` and tail factorization,
//!   both producing checkable rewrite traces;
//! * [`deduction`]: a checker for equational deductions over a system plus
//!   the epigroup basis;
//! * [`catalog`]: named small epigroups and exhaustive enumeration of small
//!   semigroups.

pub mod catalog;
pub mod deduction;
pub mod identities;
pub mod model;
pub mod rewrite;
pub mod terms;

pub use terms::{Identity, IdentitySystem, Letter, Word};

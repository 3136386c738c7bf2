//! One-letter normal forms, tail factorization and a brute-force semantic
//! oracle for checking rewrites.

mod normalize;
mod oracle;
mod tail;
mod trace;

pub use normalize::{nf_multiply, normalize_one_letter, OneLetterNF};
pub use oracle::{oracle_check, OracleReport, Separation};
pub use tail::{factor_tail, TailFactorization};
pub use trace::{power_word, Position, RewriteStep, RewriteTrace, Rule, TraceError};

use crate::terms::Letter;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("expected a word in one letter, found {}", render_letters(.letters))]
    NotOneLetter { letters: Vec<Letter> },
    #[error("normal forms in different letters `{left}` and `{right}`")]
    LetterMismatch { left: Letter, right: Letter },
}

fn render_letters(ls: &[Letter]) -> String {
    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
}

//! Unary words and identities: representation, parsing, printing and
//! syntactic analysis.

mod generate;
mod identity;
mod parse;
mod word;

pub use generate::{words_by_weight, words_up_to_weight};
pub use identity::{
    classify_identity, expand_zero, parse_identity_line, FreshLetters, Identity, IdentityFlags,
    IdentitySystem, SystemParseError,
};
pub use parse::{parse_equation, parse_word, ParseError, Rhs};
pub use word::{w, Length, Letter, Word, WordStats};

use std::collections::BTreeMap;

pub fn render_word(w: &Word) -> String {
    w.to_string()
}

pub fn analyze_word(w: &Word) -> WordStats {
    w.stats()
}

pub fn substitute(w: &Word, map: &BTreeMap<Letter, Word>) -> Word {
    w.substitute(map)
}

pub fn reverse_word(w: &Word) -> Word {
    w.reverse()
}

/// Shorthand for a letter literal known to be valid.
pub fn letter(name: &str) -> Letter {
    Letter::new(name).unwrap_or_else(|e| panic!("{e}"))
}

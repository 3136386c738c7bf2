//! Pointwise check of the basic one-variable epigroup laws.
//!
//! Each law is a chain of words in `x` and `o` that must all take the same
//! value when `x` ranges over the elements and `o` is bound to the
//! idempotent power of `x` taken from the power chain (not from the unary
//! table), so the check is independent of how pseudoinverses were computed.

use serde::{Deserialize, Serialize};

use super::eval::{eval_word, Assignment};
use super::epigroup::FiniteEpigroup;
use super::table::UnaryAlgebra;
use crate::terms::{letter, parse_word, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawViolation {
    pub law: String,
    pub element: String,
}

/// A chain `w1 = w2 = ...` over the letters `x` and `o`.
#[derive(Debug, Clone)]
pub struct Law {
    pub text: String,
    pub chain: Vec<Word>,
}

impl Law {
    fn parse(text: &str) -> Law {
        let chain = text.split('=').map(|t| parse_word(t.trim()).expect("law words parse")).collect();
        Law { text: text.to_owned(), chain }
    }
}

/// The laws checked by [`check_epigroup_laws`], with powers up to `max_power`.
pub fn epigroup_laws(max_power: usize) -> Vec<Law> {
    let mut laws = vec![
        Law::parse("x x' = (x x')^2 = (x x')'"),
        Law::parse("x x' = x' x = o"),
        Law::parse("o x = x o = x''"),
        Law::parse("x' = (x x)' x = x (x x)'"),
        Law::parse("x''' = x'"),
        Law::parse("x' o = x'"),
        Law::parse("o o = o"),
    ];
    for n in 1..=max_power {
        laws.push(Law::parse(&format!("(x^{n})' = x'^{n}")));
        laws.push(Law::parse(&format!("x^{n} x'^{n} = x'^{n} x^{n} = o")));
    }
    laws
}

/// Every `(law, element)` pair where the chain does not collapse to one
/// value. Also checks that powers of group elements stay in the group.
pub fn check_epigroup_laws(s: &FiniteEpigroup, max_power: usize) -> Vec<LawViolation> {
    let laws = epigroup_laws(max_power);
    let (x, o) = (letter("x"), letter("o"));
    let mut out = Vec::new();
    for e in 0..s.size() {
        let alpha = Assignment::from([(x.clone(), e), (o.clone(), s.cyclic(e).omega)]);
        for law in &laws {
            let vals: Vec<usize> = law
                .chain
                .iter()
                .map(|w| eval_word(s, w, &alpha).expect("x and o are bound"))
                .collect();
            if vals.windows(2).any(|p| p[0] != p[1]) {
                out.push(LawViolation { law: law.text.clone(), element: s.name(e).to_owned() });
            }
        }
        // once x^n is a group element, so is every higher power
        let mut in_group = false;
        for m in 1..=s.size() + 1 {
            let g = s.is_group_element(s.table().power(e, m));
            if in_group && !g {
                out.push(LawViolation { law: format!("x^{} in Gr S", m), element: s.name(e).to_owned() });
                break;
            }
            in_group |= g;
        }
    }
    out
}

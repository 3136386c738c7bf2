use serde::{Deserialize, Serialize};

use super::trace::{Position, RewriteStep, RewriteTrace, Rule};
use crate::terms::{Letter, Word};

/// `u = u* z` with `z` the last letter of `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailFactorization {
    /// `None` when `u` is the single letter `z`.
    pub u_star: Option<Word>,
    pub z: Letter,
    pub trace: RewriteTrace,
}

impl TailFactorization {
    /// The rewritten word `u* z`.
    pub fn word(&self) -> Word {
        let z = Word::atom(self.z.clone());
        match &self.u_star {
            Some(u) => u.mul(&z),
            None => z,
        }
    }
}

/// Rewrites a trailing `w'` as `(w w)' w` until the word ends in a letter.
/// Each round strictly lowers the weight of the trailing factor, and the
/// replacement flattens into the top-level product, so only the last
/// top-level factor ever needs inspecting.
pub fn factor_tail(u: &Word) -> TailFactorization {
    let mut current = u.clone();
    let mut trace = RewriteTrace::default();
    loop {
        let factors = current.factors();
        let last = factors.len() - 1;
        let Word::Bar(body) = &factors[last] else { break };
        let path = if matches!(current, Word::Product(_)) { vec![last] } else { vec![] };
        let step = RewriteStep::apply(
            &current,
            Rule::SplitTail { body: (**body).clone() },
            Position { path, span: None },
        );
        current = step.after.clone();
        trace.steps.push(step);
    }
    let z = current.last_letter().clone();
    let u_star = match &current {
        Word::Product(fs) => Some(Word::product(fs[..fs.len() - 1].iter().cloned())),
        _ => None,
    };
    TailFactorization { u_star, z, trace }
}

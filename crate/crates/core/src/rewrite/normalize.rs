use std::fmt;

use serde::{Deserialize, Serialize};

use super::trace::{power_word, Position, RewriteStep, RewriteTrace, Rule};
use super::RewriteError;
use crate::terms::{Letter, Word};

/// `x^p x'^q` for one letter `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneLetterNF {
    pub letter: Letter,
    pub p: usize,
    pub q: usize,
}

impl OneLetterNF {
    pub fn new(letter: Letter, p: usize, q: usize) -> OneLetterNF {
        assert!(p + q > 0, "empty normal form");
        OneLetterNF { letter, p, q }
    }

    pub fn to_word(&self) -> Word {
        power_word(&self.letter, self.p, self.q)
    }

    /// Number of factors of [`Self::to_word`].
    fn factor_count(&self) -> usize {
        self.p + self.q
    }
}

/// `x^p x'^q`, omitting a zero exponent.
impl fmt::Display for OneLetterNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = &self.letter;
        match (self.p, self.q) {
            (p, 0) => write!(f, "{x}^{p}"),
            (0, q) => write!(f, "{x}'^{q}"),
            (p, q) => write!(f, "{x}^{p} {x}'^{q}"),
        }
    }
}

struct Normalizer {
    letter: Letter,
    whole: Word,
    trace: RewriteTrace,
}

impl Normalizer {
    fn step(&mut self, rule: Rule, path: Vec<usize>, span: Option<std::ops::Range<usize>>) {
        let s = RewriteStep::apply(&self.whole, rule, Position { path, span });
        self.whole = s.after.clone();
        self.trace.steps.push(s);
    }

    /// Normalizes the subterm at `path` in place and returns its normal form.
    fn normalize_at(&mut self, path: &[usize]) -> OneLetterNF {
        let node = self.whole.at(path).expect("path stays valid").clone();
        match node {
            Word::Atom(_) => OneLetterNF::new(self.letter.clone(), 1, 0),
            Word::Bar(_) => {
                let mut child = path.to_vec();
                child.push(0);
                let inner = self.normalize_at(&child);
                let (nf, rule) = bar_of(&inner);
                if let Some(rule) = rule {
                    self.step(rule, path.to_vec(), None);
                }
                nf
            }
            Word::Product(fs) => {
                // the accumulated normal form always occupies the leading
                // factors of this product; the next unprocessed factor
                // follows it
                let mut acc: Option<OneLetterNF> = None;
                for _ in 0..fs.len() {
                    let offset = acc.as_ref().map_or(0, OneLetterNF::factor_count);
                    let mut child = path.to_vec();
                    child.push(offset);
                    let next = self.normalize_at(&child);
                    acc = Some(match acc {
                        None => next,
                        Some(prev) => self.multiply_in_place(path, &prev, &next),
                    });
                }
                acc.expect("products are nonempty")
            }
        }
    }

    /// `prev` and `next` sit side by side at the start of the product at
    /// `path`; rewrites the junction `x'^t x^m` if there is one.
    fn multiply_in_place(&mut self, path: &[usize], prev: &OneLetterNF, next: &OneLetterNF) -> OneLetterNF {
        let (nf, rule) = product_of(prev, next);
        if let Some(rule) = rule {
            let start = prev.p;
            let end = prev.p + prev.q + next.p;
            self.step(rule, path.to_vec(), Some(start..end));
        }
        nf
    }
}

/// Normal form of `(x^s x'^t)'` given that of the body.
fn bar_of(body: &OneLetterNF) -> (OneLetterNF, Option<Rule>) {
    let letter = body.letter.clone();
    let (s, t) = (body.p, body.q);
    if t == 0 {
        let nf = OneLetterNF::new(letter.clone(), 0, s);
        let rule = (s > 1).then_some(Rule::BarPower { letter, r: s });
        return (nf, rule);
    }
    use std::cmp::Ordering::*;
    match s.cmp(&t) {
        Greater => (OneLetterNF::new(letter.clone(), 0, s - t), Some(Rule::BarAbove { letter, s, t })),
        Equal => (OneLetterNF::new(letter.clone(), 1, 1), Some(Rule::BarBalanced { letter, s })),
        Less => (
            OneLetterNF::new(letter.clone(), 2 * (t - s), t - s),
            Some(Rule::BarBelow { letter, s, t }),
        ),
    }
}

/// Normal form of `x^s x'^t x^m x'^k` and the rule rewriting `x'^t x^m`,
/// if the concatenation is not already a normal form.
fn product_of(a: &OneLetterNF, b: &OneLetterNF) -> (OneLetterNF, Option<Rule>) {
    let letter = a.letter.clone();
    let (s, t, m, k) = (a.p, a.q, b.p, b.q);
    if t == 0 || m == 0 {
        return (OneLetterNF::new(letter, s + m, t + k), None);
    }
    if t <= m {
        (OneLetterNF::new(letter.clone(), s + m - t + 1, k + 1), Some(Rule::R1 { letter, t, m }))
    } else {
        (OneLetterNF::new(letter.clone(), s, t - m + k), Some(Rule::R2 { letter, t, m }))
    }
}

/// Rewrites a word in one letter to `x^p x'^q`, recording every step.
/// Semigroup words `x^r` give `(r, 0)`; every other input has `q >= 1`.
pub fn normalize_one_letter(w: &Word) -> Result<(OneLetterNF, RewriteTrace), RewriteError> {
    let content = w.content();
    if content.len() != 1 {
        return Err(RewriteError::NotOneLetter { letters: content.into_iter().collect() });
    }
    let letter = content.into_iter().next().unwrap();
    let mut n = Normalizer { letter, whole: w.clone(), trace: RewriteTrace::default() };
    let nf = n.normalize_at(&[]);
    debug_assert_eq!(n.whole, nf.to_word());
    Ok((nf, n.trace))
}

/// Product of two normal forms in the same letter, with the (at most one)
/// rewrite step applied to the concatenation.
pub fn nf_multiply(a: &OneLetterNF, b: &OneLetterNF) -> Result<(OneLetterNF, RewriteTrace), RewriteError> {
    if a.letter != b.letter {
        return Err(RewriteError::LetterMismatch { left: a.letter.clone(), right: b.letter.clone() });
    }
    let mut n = Normalizer {
        letter: a.letter.clone(),
        whole: a.to_word().mul(&b.to_word()),
        trace: RewriteTrace::default(),
    };
    let nf = n.multiply_in_place(&[], a, b);
    debug_assert_eq!(n.whole, nf.to_word());
    Ok((nf, n.trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{letter, w};

    fn nf(text: &str) -> (usize, usize) {
        let (nf, trace) = normalize_one_letter(&w(text)).unwrap();
        trace.verify().unwrap();
        (nf.p, nf.q)
    }

    #[test]
    fn pinned_outputs() {
        assert_eq!(nf("x'"), (0, 1));
        assert_eq!(nf("x''"), (2, 1));
        assert_eq!(nf("(x x')'"), (1, 1));
        assert_eq!(nf("(x^3)'"), (0, 3));
        assert_eq!(nf("x x x"), (3, 0));
        assert_eq!(nf("x"), (1, 0));
    }

    #[test]
    fn trace_chains_from_input_to_output() {
        let input = w("(x x')'' x x' (x x)'");
        let (out, trace) = normalize_one_letter(&input).unwrap();
        trace.verify().unwrap();
        assert_eq!(trace.steps.first().unwrap().before, input);
        assert_eq!(trace.steps.last().unwrap().after, out.to_word());
    }

    #[test]
    fn multiply_examples() {
        let x = letter("x");
        let m = |a: (usize, usize), b: (usize, usize)| {
            let (r, t) = nf_multiply(&OneLetterNF::new(x.clone(), a.0, a.1), &OneLetterNF::new(x.clone(), b.0, b.1)).unwrap();
            t.verify().unwrap();
            (r.p, r.q, t.len())
        };
        assert_eq!(m((1, 1), (1, 1)), (2, 2, 1));
        assert_eq!(m((0, 2), (1, 0)), (0, 1, 1));
        assert_eq!(m((2, 0), (3, 0)), (5, 0, 0));
        assert_eq!(m((0, 1), (0, 1)), (0, 2, 0));
    }

    #[test]
    fn errors() {
        assert!(matches!(normalize_one_letter(&w("x y")), Err(RewriteError::NotOneLetter { .. })));
        let a = OneLetterNF::new(letter("x"), 1, 0);
        let b = OneLetterNF::new(letter("y"), 1, 0);
        assert!(matches!(nf_multiply(&a, &b), Err(RewriteError::LetterMismatch { .. })));
    }

    #[test]
    fn display() {
        assert_eq!(OneLetterNF::new(letter("x"), 2, 1).to_string(), "x^2 x'^1");
        assert_eq!(OneLetterNF::new(letter("x"), 0, 3).to_string(), "x'^3");
        assert_eq!(OneLetterNF::new(letter("x"), 4, 0).to_string(), "x^4");
    }
}

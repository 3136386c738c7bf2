use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::terms::{Identity, Letter, Word};

/// `x^p x'^q` as a word; `p + q` must be positive.
pub fn power_word(letter: &Letter, p: usize, q: usize) -> Word {
    assert!(p + q > 0, "empty normal form");
    let x = Word::atom(letter.clone());
    let xb = Word::bar(x.clone());
    Word::product(std::iter::repeat(x).take(p).chain(std::iter::repeat(xb).take(q)))
}

/// A rewrite rule instance. Every variant denotes one concrete identity
/// `lhs = rhs` that holds in all epigroups, used left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    /// `x'^t x^m -> x^(m-t+1) x'` for `1 <= t <= m`.
    R1 { letter: Letter, t: usize, m: usize },
    /// `x'^t x^m -> x'^(t-m)` for `t > m >= 1`.
    R2 { letter: Letter, t: usize, m: usize },
    /// `(x^r)' -> x'^r` for `r >= 2`.
    BarPower { letter: Letter, r: usize },
    /// `(x^s x'^t)' -> x'^(s-t)` for `s > t >= 1`.
    BarAbove { letter: Letter, s: usize, t: usize },
    /// `(x^s x'^s)' -> x x'` for `s >= 1`.
    BarBalanced { letter: Letter, s: usize },
    /// `(x^s x'^t)' -> x^(2(t-s)) x'^(t-s)` for `s < t`.
    BarBelow { letter: Letter, s: usize, t: usize },
    /// `w' -> (w w)' w`.
    SplitTail { body: Word },
}

impl Rule {
    /// Short tag shown in traces.
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::R1 { .. } => "R1",
            Rule::R2 { .. } => "R2",
            Rule::BarPower { .. } => "bar-power",
            Rule::BarAbove { .. } => "bar-above",
            Rule::BarBalanced { .. } => "bar-balanced",
            Rule::BarBelow { .. } => "bar-below",
            Rule::SplitTail { .. } => "split-tail",
        }
    }

    /// Whether the parameters are in the rule's range.
    pub fn is_well_formed(&self) -> bool {
        match *self {
            Rule::R1 { t, m, .. } => 1 <= t && t <= m,
            Rule::R2 { t, m, .. } => t > m && m >= 1,
            Rule::BarPower { r, .. } => r >= 2,
            Rule::BarAbove { s, t, .. } => s > t && t >= 1,
            Rule::BarBalanced { s, .. } => s >= 1,
            Rule::BarBelow { s, t, .. } => s < t,
            Rule::SplitTail { .. } => true,
        }
    }

    /// The identity this rule instance applies.
    pub fn instance(&self) -> Identity {
        let bar = Word::bar;
        match self {
            Rule::R1 { letter, t, m } => Identity::new(
                Word::product([power_word(letter, 0, *t), power_word(letter, *m, 0)]),
                power_word(letter, m - t + 1, 1),
            ),
            Rule::R2 { letter, t, m } => Identity::new(
                Word::product([power_word(letter, 0, *t), power_word(letter, *m, 0)]),
                power_word(letter, 0, t - m),
            ),
            Rule::BarPower { letter, r } => {
                Identity::new(bar(power_word(letter, *r, 0)), power_word(letter, 0, *r))
            }
            Rule::BarAbove { letter, s, t } => {
                Identity::new(bar(power_word(letter, *s, *t)), power_word(letter, 0, s - t))
            }
            Rule::BarBalanced { letter, s } => {
                Identity::new(bar(power_word(letter, *s, *s)), power_word(letter, 1, 1))
            }
            Rule::BarBelow { letter, s, t } => Identity::new(
                bar(power_word(letter, *s, *t)),
                power_word(letter, 2 * (t - s), t - s),
            ),
            Rule::SplitTail { body } => {
                Identity::new(bar(body.clone()), Word::product([bar(body.mul(body)), body.clone()]))
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Where a rule was applied: the subterm at `path`, or the factor range
/// `span` of the product at `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub path: Vec<usize>,
    pub span: Option<Range<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub before: Word,
    pub after: Word,
    pub rule: Rule,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("step {step}: rule parameters out of range")]
    BadParameters { step: usize },
    #[error("step {step}: no redex at the recorded position")]
    NoRedex { step: usize },
    #[error("step {step}: rewriting does not produce the recorded result")]
    WrongResult { step: usize },
    #[error("step {step}: does not continue from the previous step")]
    Broken { step: usize },
}

impl RewriteStep {
    pub(crate) fn apply(before: &Word, rule: Rule, position: Position) -> RewriteStep {
        let inst = rule.instance();
        debug_assert_eq!(redex(before, &position).as_ref(), Some(&inst.lhs));
        let after = before
            .replace(&position.path, position.span.clone(), &inst.rhs)
            .expect("position is valid");
        RewriteStep { before: before.clone(), after, rule, position }
    }

    /// Checks that the rule, applied once at the recorded position, turns
    /// `before` into `after`.
    pub fn verify(&self, step: usize) -> Result<(), TraceError> {
        if !self.rule.is_well_formed() {
            return Err(TraceError::BadParameters { step });
        }
        let inst = self.rule.instance();
        if redex(&self.before, &self.position).as_ref() != Some(&inst.lhs) {
            return Err(TraceError::NoRedex { step });
        }
        let got = self.before.replace(&self.position.path, self.position.span.clone(), &inst.rhs);
        if got.as_ref() != Some(&self.after) {
            return Err(TraceError::WrongResult { step });
        }
        Ok(())
    }
}

fn redex(w: &Word, position: &Position) -> Option<Word> {
    let node = w.at(&position.path)?;
    match &position.span {
        None => Some(node.clone()),
        Some(r) => {
            let fs = node.factors();
            (r.start < r.end && r.end <= fs.len()).then(|| Word::product(fs[r.clone()].iter().cloned()))
        }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  --[{}]-->  {}", self.before, self.rule, self.after)
    }
}

/// A chain of rewrite steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Every step verifies and consecutive steps chain.
    pub fn verify(&self) -> Result<(), TraceError> {
        for (i, s) in self.steps.iter().enumerate() {
            s.verify(i)?;
            if i > 0 && self.steps[i - 1].after != s.before {
                return Err(TraceError::Broken { step: i });
            }
        }
        Ok(())
    }

    /// One step per line.
    pub fn render(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }
}

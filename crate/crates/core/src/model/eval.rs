use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::UnaryAlgebra;
use super::ModelError;
use crate::terms::{Identity, IdentitySystem, Letter, Word};

/// Values for letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub BTreeMap<Letter, usize>);

impl Assignment {
    pub fn get(&self, l: &Letter) -> Option<usize> {
        self.0.get(l).copied()
    }

    pub fn set(&mut self, l: Letter, value: usize) {
        self.0.insert(l, value);
    }

    /// `x:=e, y:=a` with element names from `s`.
    pub fn render<S: UnaryAlgebra + ?Sized>(&self, s: &S) -> String {
        self.0
            .iter()
            .map(|(l, &v)| format!("{l}:={}", s.name(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl<const N: usize> From<[(Letter, usize); N]> for Assignment {
    fn from(pairs: [(Letter, usize); N]) -> Self {
        Assignment(pairs.into_iter().collect())
    }
}

/// Homomorphic evaluation; bars use the algebra's unary operation.
pub fn eval_word<S: UnaryAlgebra + ?Sized>(s: &S, w: &Word, alpha: &Assignment) -> Result<usize, ModelError> {
    match w {
        Word::Atom(l) => alpha.get(l).ok_or_else(|| ModelError::UnboundLetter(l.clone())),
        Word::Bar(b) => Ok(s.unary(eval_word(s, b, alpha)?)),
        Word::Product(fs) => {
            let mut acc = eval_word(s, &fs[0], alpha)?;
            for f in &fs[1..] {
                acc = s.mul(acc, eval_word(s, f, alpha)?);
            }
            Ok(acc)
        }
    }
}

/// A word with letters replaced by slot numbers, for fast repeated
/// evaluation.
#[derive(Debug, Clone)]
enum Compiled {
    Slot(usize),
    Bar(Box<Compiled>),
    Mul(Vec<Compiled>),
}

impl Compiled {
    fn new(w: &Word, letters: &[Letter]) -> Compiled {
        match w {
            Word::Atom(l) => Compiled::Slot(letters.binary_search(l).expect("letter listed")),
            Word::Bar(b) => Compiled::Bar(Box::new(Compiled::new(b, letters))),
            Word::Product(fs) => Compiled::Mul(fs.iter().map(|f| Compiled::new(f, letters)).collect()),
        }
    }

    fn eval<S: UnaryAlgebra + ?Sized>(&self, s: &S, vals: &[usize]) -> usize {
        match self {
            Compiled::Slot(i) => vals[*i],
            Compiled::Bar(b) => s.unary(b.eval(s, vals)),
            Compiled::Mul(fs) => {
                let mut acc = fs[0].eval(s, vals);
                for f in &fs[1..] {
                    acc = s.mul(acc, f.eval(s, vals));
                }
                acc
            }
        }
    }
}

/// An identity prepared for evaluation over all assignments.
#[derive(Debug, Clone)]
pub struct CompiledIdentity {
    letters: Vec<Letter>,
    lhs: Compiled,
    rhs: Compiled,
}

impl CompiledIdentity {
    pub fn new(id: &Identity) -> CompiledIdentity {
        let letters: Vec<Letter> = id.content().into_iter().collect();
        let lhs = Compiled::new(&id.lhs, &letters);
        let rhs = Compiled::new(&id.rhs, &letters);
        CompiledIdentity { letters, lhs, rhs }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Both sides under the values `vals` (one per letter, sorted order).
    pub fn eval<S: UnaryAlgebra + ?Sized>(&self, s: &S, vals: &[usize]) -> (usize, usize) {
        (self.lhs.eval(s, vals), self.rhs.eval(s, vals))
    }

    fn separates<S: UnaryAlgebra + ?Sized>(&self, s: &S, vals: &[usize]) -> bool {
        let (l, r) = self.eval(s, vals);
        l != r
    }
}

/// Limits for exhaustive checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Maximum number of assignments `|S|^letters` a single check may visit.
    pub max_assignments: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { max_assignments: 100_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Satisfaction {
    pub holds: bool,
    /// Lexicographically first separating assignment (first letter most
    /// significant, elements in table order).
    pub witness: Option<Assignment>,
}

const PARALLEL_THRESHOLD: u64 = 1 << 14;

fn assignment_count(n: usize, k: usize, config: &CheckConfig) -> Result<u64, ModelError> {
    let required = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if required > config.max_assignments as u128 {
        return Err(ModelError::ResourceGuard { required, limit: config.max_assignments });
    }
    Ok(required as u64)
}

fn decode(mut code: u64, n: usize, vals: &mut [usize]) {
    for v in vals.iter_mut().rev() {
        *v = (code % n as u64) as usize;
        code /= n as u64;
    }
}

/// Exhaustive check of `id` in `s` over all `|S|^letters` assignments.
pub fn satisfies<S: UnaryAlgebra + ?Sized>(
    s: &S,
    id: &Identity,
    config: &CheckConfig,
) -> Result<Satisfaction, ModelError> {
    let compiled = CompiledIdentity::new(id);
    satisfies_compiled(s, &compiled, config)
}

pub fn satisfies_compiled<S: UnaryAlgebra + ?Sized>(
    s: &S,
    id: &CompiledIdentity,
    config: &CheckConfig,
) -> Result<Satisfaction, ModelError> {
    let n = s.size();
    let k = id.letters.len();
    let total = assignment_count(n, k, config)?;
    let first_bad = if total <= PARALLEL_THRESHOLD {
        let mut vals = vec![0; k];
        (0..total).find(|&code| {
            decode(code, n, &mut vals);
            id.separates(s, &vals)
        })
    } else {
        // find_first keeps the lexicographically least witness regardless
        // of scheduling
        (0..total).into_par_iter().find_first(|&code| {
            let mut vals = vec![0; k];
            decode(code, n, &mut vals);
            id.separates(s, &vals)
        })
    };
    Ok(match first_bad {
        None => Satisfaction { holds: true, witness: None },
        Some(code) => {
            let mut vals = vec![0; k];
            decode(code, n, &mut vals);
            let witness = Assignment(id.letters.iter().cloned().zip(vals).collect());
            Satisfaction { holds: false, witness: Some(witness) }
        }
    })
}

/// Shorthand: whether `id` holds, panicking on the resource guard.
pub fn holds<S: UnaryAlgebra + ?Sized>(s: &S, id: &Identity) -> bool {
    satisfies(s, id, &CheckConfig::default()).expect("within resource guard").holds
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFailure {
    /// Position of the failing identity in the system.
    pub position: usize,
    pub identity: Identity,
    pub witness: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSatisfaction {
    pub holds: bool,
    pub first_failure: Option<SystemFailure>,
}

pub fn satisfies_system<S: UnaryAlgebra + ?Sized>(
    s: &S,
    system: &IdentitySystem,
    config: &CheckConfig,
) -> Result<SystemSatisfaction, ModelError> {
    for (position, id) in system.iter().enumerate() {
        let sat = satisfies(s, id, config)?;
        if let Some(witness) = sat.witness {
            return Ok(SystemSatisfaction {
                holds: false,
                first_failure: Some(SystemFailure { position, identity: id.clone(), witness }),
            });
        }
    }
    Ok(SystemSatisfaction { holds: true, first_failure: None })
}

//! Checking equational deductions from a system Σ together with the
//! epigroup basis Δ.

mod mutate;
mod script;

pub use mutate::{mutations, Mutation};
pub use script::{load_script, parse_script, render_script, ScriptError, ScriptHeader};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::terms::{letter, w, Identity, IdentitySystem, Letter, Word};

/// How a step is obtained from earlier steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    Axiom,
    Symmetry(usize),
    Transitivity(usize, usize),
    ProductOf(usize, usize),
    BarOf(usize),
    SubstitutionOf(usize, BTreeMap<Letter, Word>),
    Reflexive,
}

impl Justification {
    /// Step indices this justification refers to.
    pub fn references(&self) -> Vec<usize> {
        use Justification::*;
        match self {
            Axiom | Reflexive => vec![],
            Symmetry(j) | BarOf(j) | SubstitutionOf(j, _) => vec![*j],
            Transitivity(j, k) | ProductOf(j, k) => vec![*j, *k],
        }
    }
}

/// Script syntax: `axiom`, `sym 0`, `subst 1 x:=y y,z:=x'`, ...
impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Justification::*;
        match self {
            Axiom => f.write_str("axiom"),
            Reflexive => f.write_str("refl"),
            Symmetry(j) => write!(f, "sym {j}"),
            BarOf(j) => write!(f, "bar {j}"),
            Transitivity(j, k) => write!(f, "trans {j} {k}"),
            ProductOf(j, k) => write!(f, "prod {j} {k}"),
            SubstitutionOf(j, map) => {
                let images: Vec<String> = map.iter().map(|(l, w)| format!("{l}:={w}")).collect();
                write!(f, "subst {j} {}", images.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub identity: Identity,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deduction {
    /// Σ.
    pub axioms: IdentitySystem,
    /// Primes up to this bound instantiate the last family of Δ.
    pub delta_bound: usize,
    pub steps: Vec<Step>,
}

impl Deduction {
    /// The identity proved by the last step.
    pub fn theorem(&self) -> Option<&Identity> {
        self.steps.last().map(|s| &s.identity)
    }
}

/// Whether axioms are matched literally or up to a bijective renaming of
/// letters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomMatching {
    #[default]
    UpToRenaming,
    Strict,
}

pub fn primes_up_to(bound: usize) -> Vec<usize> {
    (2..=bound).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// The identity basis of the variety of all epigroups, with the family
/// `(x^p)' = x'^p` cut off at primes `p <= prime_bound`. Associativity is
/// listed even though flattened products make it trivial.
pub fn delta_basis(prime_bound: usize) -> IdentitySystem {
    let fixed = [
        ("x y z", "x y z"),
        ("(x y)' x", "x (y x)'"),
        ("x' x' x", "x'"),
        ("x x x'", "x''"),
        ("(x' x)'", "x' x"),
    ];
    let mut ids: Vec<Identity> = fixed.iter().map(|(l, r)| Identity::new(w(l), w(r))).collect();
    let x = Word::atom(letter("x"));
    for p in primes_up_to(prime_bound) {
        ids.push(Identity::new(Word::bar(x.pow(p)), Word::bar(x.clone()).pow(p)));
    }
    IdentitySystem::new(ids)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadStep {
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub delta_bound: usize,
    pub steps: usize,
    pub first_bad: Option<BadStep>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_bad {
            None => write!(f, "valid ({} steps, delta bound {})", self.steps, self.delta_bound),
            Some(bad) => write!(f, "invalid at step {}: {}", bad.step, bad.reason),
        }
    }
}

pub const NO_RULE: &str = "no rule matches";

struct AxiomIndex {
    matching: AxiomMatching,
    set: BTreeSet<Identity>,
}

impl AxiomIndex {
    fn new(d: &Deduction, matching: AxiomMatching) -> AxiomIndex {
        let delta = delta_basis(d.delta_bound);
        let set = d
            .axioms
            .iter()
            .chain(delta.iter())
            .map(|id| match matching {
                AxiomMatching::UpToRenaming => id.canonical_renaming(),
                AxiomMatching::Strict => id.clone(),
            })
            .collect();
        AxiomIndex { matching, set }
    }

    fn contains(&self, id: &Identity) -> bool {
        match self.matching {
            AxiomMatching::UpToRenaming => self.set.contains(&id.canonical_renaming()),
            AxiomMatching::Strict => self.set.contains(id),
        }
    }
}

fn step_follows(steps: &[Step], i: usize, axioms: &AxiomIndex) -> bool {
    use Justification::*;
    let Identity { lhs: u, rhs: v } = &steps[i].identity;
    let at = |j: usize| &steps[j].identity;
    match &steps[i].justification {
        Axiom => axioms.contains(&steps[i].identity),
        Reflexive => u == v,
        Symmetry(j) => *u == at(*j).rhs && *v == at(*j).lhs,
        Transitivity(j, k) => at(*j).lhs == *u && at(*j).rhs == at(*k).lhs && at(*k).rhs == *v,
        ProductOf(j, k) => *u == at(*j).lhs.mul(&at(*k).lhs) && *v == at(*j).rhs.mul(&at(*k).rhs),
        BarOf(j) => *u == Word::bar(at(*j).lhs.clone()) && *v == Word::bar(at(*j).rhs.clone()),
        SubstitutionOf(j, sigma) => at(*j).substitute(sigma) == steps[i].identity,
    }
}

/// Checks every step in order and reports the first one that is not
/// justified.
pub fn verify_deduction(d: &Deduction, matching: AxiomMatching) -> VerifyReport {
    let report = |first_bad: Option<BadStep>| VerifyReport {
        valid: first_bad.is_none(),
        delta_bound: d.delta_bound,
        steps: d.steps.len(),
        first_bad,
    };
    if d.steps.is_empty() {
        return report(Some(BadStep { step: 0, reason: "empty deduction".into() }));
    }
    let axioms = AxiomIndex::new(d, matching);
    for (i, step) in d.steps.iter().enumerate() {
        if let Some(&j) = step.justification.references().iter().find(|&&j| j >= i) {
            let reason = format!("step index {j} out of range (must be below {i})");
            return report(Some(BadStep { step: i, reason }));
        }
        if !step_follows(&d.steps, i, &axioms) {
            return report(Some(BadStep { step: i, reason: NO_RULE.into() }));
        }
    }
    report(None)
}

/// Verifies independent deductions in parallel; output order matches input.
pub fn verify_all(ds: &[Deduction], matching: AxiomMatching) -> Vec<VerifyReport> {
    ds.par_iter().map(|d| verify_deduction(d, matching)).collect()
}

/// `t(lhs) = t(rhs)`.
pub fn same_tail(id: &Identity) -> bool {
    id.lhs.last_letter() == id.rhs.last_letter()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailCheck {
    /// Every identity of Σ has equal tails on both sides.
    pub applicable: bool,
    pub holds: bool,
    pub first_violation: Option<usize>,
    pub note: Option<String>,
}

/// If every identity of Σ has the same last letter on both sides, so does
/// every step of a valid deduction from Σ ∪ Δ. Returns whether that holds
/// for `d`; vacuously true when Σ does not have the property.
pub fn check_tail_invariant(sigma: &IdentitySystem, d: &Deduction) -> TailCheck {
    debug_assert!(delta_basis(d.delta_bound).iter().all(same_tail));
    if let Some(pos) = sigma.iter().position(|id| !same_tail(id)) {
        return TailCheck {
            applicable: false,
            holds: true,
            first_violation: None,
            note: Some(format!("axiom {} has different last letters; nothing to check", pos)),
        };
    }
    let first_violation = d.steps.iter().position(|s| !same_tail(&s.identity));
    TailCheck { applicable: true, holds: first_violation.is_none(), first_violation, note: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(text: &str) -> Identity {
        Identity::parse(text).unwrap()
    }

    fn step(text: &str, j: Justification) -> Step {
        Step { identity: id(text), justification: j }
    }

    fn idempotent() -> Deduction {
        use Justification::*;
        Deduction {
            axioms: IdentitySystem::new(vec![id("x = x x")]),
            delta_bound: 2,
            steps: vec![
                step("x = x x", Axiom),
                step("x x = x x x x", ProductOf(0, 0)),
                step("x = x x x x", Transitivity(0, 1)),
            ],
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(primes_up_to(12), vec![2, 3, 5, 7, 11]);
        assert_eq!(delta_basis(3).len(), 7);
        assert_eq!(delta_basis(1).len(), 5);
        assert!(delta_basis(2).iter().any(|i| *i == id("(x x)' = x' x'")));
        let small: BTreeSet<_> = delta_basis(3).iter().cloned().collect();
        assert!(delta_basis(5).iter().filter(|i| small.contains(i)).count() == small.len());
        assert!(delta_basis(30).iter().all(same_tail));
    }

    #[test]
    fn idempotent_deduction() {
        let d = idempotent();
        let r = verify_deduction(&d, AxiomMatching::default());
        assert!(r.valid, "{r}");
        let mut bad = d.clone();
        bad.steps[2].identity = id("x = x x x");
        let r = verify_deduction(&bad, AxiomMatching::default());
        assert_eq!(r.to_string(), "invalid at step 2: no rule matches");
        assert!(check_tail_invariant(&d.axioms, &d).holds);
    }

    #[test]
    fn delta_axiom_alone() {
        let d = Deduction {
            axioms: IdentitySystem::default(),
            delta_bound: 2,
            steps: vec![step("(x x)' = x' x'", Justification::Axiom)],
        };
        assert!(verify_deduction(&d, AxiomMatching::Strict).valid);
        let d1 = Deduction { delta_bound: 1, ..d };
        assert!(!verify_deduction(&d1, AxiomMatching::Strict).valid);
    }

    #[test]
    fn renaming_versus_strict() {
        let d = Deduction {
            axioms: IdentitySystem::new(vec![id("x = x x")]),
            delta_bound: 2,
            steps: vec![step("y = y y", Justification::Axiom)],
        };
        assert!(verify_deduction(&d, AxiomMatching::UpToRenaming).valid);
        assert!(!verify_deduction(&d, AxiomMatching::Strict).valid);
        // renaming must be bijective
        let d = Deduction { steps: vec![step("x y = y x", Justification::Axiom)], ..d };
        let d = Deduction { axioms: IdentitySystem::new(vec![id("x x = x x")]), ..d };
        assert!(!verify_deduction(&d, AxiomMatching::UpToRenaming).valid);
    }

    #[test]
    fn forward_reference_is_reported() {
        let mut d = idempotent();
        d.steps[1].justification = Justification::ProductOf(0, 1);
        let r = verify_deduction(&d, AxiomMatching::default());
        assert_eq!(r.first_bad.unwrap().step, 1);
        d.steps[1].justification = Justification::ProductOf(0, 7);
        let r = verify_deduction(&d, AxiomMatching::default());
        assert!(r.first_bad.unwrap().reason.contains("out of range"));
    }

    #[test]
    fn tail_invariant_not_applicable() {
        let sigma = IdentitySystem::new(vec![id("x y = y x")]);
        let d = Deduction {
            axioms: sigma.clone(),
            delta_bound: 2,
            steps: vec![step("x y = y x", Justification::Axiom)],
        };
        let t = check_tail_invariant(&sigma, &d);
        assert!(!t.applicable && t.holds && t.note.is_some());
    }

    #[test]
    fn empty_is_invalid() {
        let d = Deduction { axioms: IdentitySystem::default(), delta_bound: 2, steps: vec![] };
        assert!(!verify_deduction(&d, AxiomMatching::default()).valid);
    }
}

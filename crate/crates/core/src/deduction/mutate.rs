use super::{Deduction, Justification};
use crate::terms::{Identity, Word};

/// A deduction differing from the original in exactly one step.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub step: usize,
    pub description: String,
    pub deduction: Deduction,
}

/// All single-step mutations: the step's right side is barred, or its
/// justification is swapped for a different rule, different step indices,
/// or barred substitution images. Mutations that change nothing are dropped.
pub fn mutations(d: &Deduction) -> Vec<Mutation> {
    let mut out = Vec::new();
    for (i, step) in d.steps.iter().enumerate() {
        let mut push = |description: String, f: &dyn Fn(&mut Deduction)| {
            let mut m = d.clone();
            f(&mut m);
            if m.steps[i] != d.steps[i] {
                out.push(Mutation { step: i, description, deduction: m });
            }
        };
        push(format!("step {i}: bar the right side"), &|m| {
            let id = &m.steps[i].identity;
            m.steps[i].identity = Identity::new(id.lhs.clone(), Word::bar(id.rhs.clone()));
        });
        for j in alternative_justifications(&step.justification, i) {
            push(format!("step {i}: justify by `{j}`"), &|m| m.steps[i].justification = j.clone());
        }
    }
    out
}

fn alternative_justifications(j: &Justification, i: usize) -> Vec<Justification> {
    use Justification::*;
    let mut alts = vec![match j {
        Axiom => Reflexive,
        _ => Axiom,
    }];
    let others = |k: usize| (0..i).filter(move |&o| o != k);
    match j {
        Axiom | Reflexive => {}
        Symmetry(a) => alts.extend(others(*a).map(Symmetry)),
        BarOf(a) => alts.extend(others(*a).map(BarOf)),
        Transitivity(a, b) => {
            alts.extend(others(*a).map(|o| Transitivity(o, *b)));
            alts.extend(others(*b).map(|o| Transitivity(*a, o)));
        }
        ProductOf(a, b) => {
            alts.extend(others(*a).map(|o| ProductOf(o, *b)));
            alts.extend(others(*b).map(|o| ProductOf(*a, o)));
        }
        SubstitutionOf(a, map) => {
            alts.extend(others(*a).map(|o| SubstitutionOf(o, map.clone())));
            for l in map.keys() {
                let mut barred = map.clone();
                barred.insert(l.clone(), Word::bar(map[l].clone()));
                alts.push(SubstitutionOf(*a, barred));
            }
        }
    }
    alts
}

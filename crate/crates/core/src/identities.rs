//! Classification of identity systems, the fresh-letter padding
//! transformation, periodic consequences and degree witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{satisfies_compiled, CheckConfig, CompiledIdentity, FiniteEpigroup, ModelError};
use crate::terms::{letter, Identity, IdentitySystem, Length, Letter, Word};

/// Which syntactic criterion an identity meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    SemigroupNonBalanced,
    SemigroupHeterotypical,
    Mixed,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::SemigroupNonBalanced => "semigroup non-balanced",
            Criterion::SemigroupHeterotypical => "semigroup heterotypical",
            Criterion::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: bool,
    /// First identity meeting the criterion, with its position.
    pub witness: Option<(usize, Identity, Criterion)>,
}

fn first_meeting(system: &IdentitySystem, test: impl Fn(&Identity) -> Option<Criterion>) -> Verdict {
    let witness = system
        .iter()
        .enumerate()
        .find_map(|(i, id)| test(id).map(|c| (i, id.clone(), c)));
    Verdict { verdict: witness.is_some(), witness }
}

/// Whether the class of epigroups satisfying the system is a variety: the
/// system must contain a semigroup non-balanced identity or a mixed one.
/// A `false` verdict means every identity is balanced or strictly unary.
pub fn is_variety_class(system: &IdentitySystem) -> Verdict {
    first_meeting(system, |id| {
        let f = id.flags();
        if f.is_semigroup && !f.is_balanced {
            Some(Criterion::SemigroupNonBalanced)
        } else if f.is_mixed {
            Some(Criterion::Mixed)
        } else {
            None
        }
    })
}

/// Whether that variety coincides with the unary-semigroup variety of the
/// system together with all epigroup identities: the system must contain
/// a semigroup heterotypical identity or a mixed one.
pub fn equals_var_e(system: &IdentitySystem) -> Verdict {
    first_meeting(system, |id| {
        let f = id.flags();
        if f.is_semigroup && f.is_heterotypical {
            Some(Criterion::SemigroupHeterotypical)
        } else if f.is_mixed {
            Some(Criterion::Mixed)
        } else {
            None
        }
    })
}

/// Pads both sides of every identity with `m` fresh letters on the left and
/// `n` on the right.
pub fn transform_mn(system: &IdentitySystem, m: usize, n: usize) -> IdentitySystem {
    let fresh: Vec<Word> = system.fresh_letters().take(m + n).map(Word::atom).collect();
    let (left, right) = fresh.split_at(m);
    let pad = |w: &Word| Word::product(left.iter().cloned().chain([w.clone()]).chain(right.iter().cloned()));
    system.iter().map(|id| Identity::new(pad(&id.lhs), pad(&id.rhs))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicConsequence {
    pub p: usize,
    pub q: usize,
    /// `x' = x^((p+1)q - 1)`.
    pub mixed: Identity,
}

/// For a semigroup non-balanced identity: identify all letters to obtain
/// `x^p = x^(p+q)` and return the mixed identity `x' = x^((p+1)q-1)` it
/// implies in epigroups. If both sides have equal length, some letter with
/// unequal occurrence counts is first replaced by its square.
pub fn periodic_consequence(id: &Identity) -> Option<PeriodicConsequence> {
    let flags = id.flags();
    if !flags.is_semigroup || flags.is_balanced {
        return None;
    }
    let lo = id.lhs.occurrences()?;
    let ro = id.rhs.occurrences()?;
    let len = |o: &std::collections::BTreeMap<Letter, usize>| o.values().sum::<usize>();
    let (mut a, mut b) = (len(&lo), len(&ro));
    if a == b {
        let content = id.content();
        let l = content
            .iter()
            .find(|l| lo.get(*l).copied().unwrap_or(0) != ro.get(*l).copied().unwrap_or(0))
            .expect("non-balanced");
        a += lo.get(l).copied().unwrap_or(0);
        b += ro.get(l).copied().unwrap_or(0);
    }
    let (p, q) = (a.min(b), a.abs_diff(b));
    let x = Word::atom(letter("x"));
    let mixed = Identity::new(Word::bar(x.clone()), x.pow((p + 1) * q - 1));
    Some(PeriodicConsequence { p, q, mixed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeForm {
    /// 5: `x1...xn = w` with `l(w) > n`; 6: `x1...xn = x1...x(i-1) (xi...xj)'' x(j+1)...xn`.
    pub form: u8,
    pub n: usize,
    pub i: Option<usize>,
    pub j: Option<usize>,
}

/// The identity `x1...xn = x1...x(i-1) (xi...xj)'' x(j+1)...xn`.
pub fn degree_identity(n: usize, i: usize, j: usize) -> Identity {
    assert!(1 <= i && i <= j && j <= n);
    let xs: Vec<Word> = (1..=n).map(|k| Word::atom(Letter::indexed('x', k))).collect();
    let lhs = Word::product(xs.iter().cloned());
    let middle = Word::bar(Word::bar(Word::product(xs[i - 1..j].iter().cloned())));
    let rhs = Word::product(xs[..i - 1].iter().cloned().chain([middle]).chain(xs[j..].iter().cloned()));
    Identity::new(lhs, rhs)
}

/// Recognizes the two degree-bounding shapes; the double-bar shape takes
/// precedence since it is a special case of the first.
pub fn recognize_degree_form(id: &Identity) -> Option<DegreeForm> {
    if !id.lhs.is_linear() {
        return None;
    }
    let xs = id.lhs.factors();
    let n = xs.len();
    if let Some((i, j)) = match_double_bar(xs, id.rhs.factors()) {
        return Some(DegreeForm { form: 6, n, i: Some(i), j: Some(j) });
    }
    if id.rhs.length() > Length::Finite(n) {
        return Some(DegreeForm { form: 5, n, i: None, j: None });
    }
    None
}

fn match_double_bar(xs: &[Word], rhs: &[Word]) -> Option<(usize, usize)> {
    let pos = rhs.iter().position(|f| matches!(f, Word::Bar(b) if matches!(**b, Word::Bar(_))))?;
    let Word::Bar(outer) = &rhs[pos] else { unreachable!() };
    let Word::Bar(inner) = &**outer else { unreachable!() };
    let body = inner.factors();
    let (prefix, suffix) = (&rhs[..pos], &rhs[pos + 1..]);
    let (i, j) = (pos + 1, pos + body.len());
    let ok = prefix == &xs[..pos.min(xs.len())]
        && j <= xs.len()
        && body == &xs[pos..j]
        && suffix == &xs[j..];
    ok.then_some((i, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWitness {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

/// Least `n <= n_max` (then least `i`, then `j`) such that `s` satisfies
/// the double-bar degree identity with parameters `(n, i, j)`.
pub fn find_degree_witness(
    s: &FiniteEpigroup,
    n_max: usize,
    config: &CheckConfig,
) -> Result<Option<DegreeWitness>, ModelError> {
    for n in 1..=n_max {
        for i in 1..=n {
            for j in i..=n {
                let id = CompiledIdentity::new(&degree_identity(n, i, j));
                if satisfies_compiled(s, &id, config)?.holds {
                    return Ok(Some(DegreeWitness { n, i, j }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(text: &str) -> IdentitySystem {
        IdentitySystem::parse(text).unwrap()
    }

    fn id(s: &str) -> Identity {
        Identity::parse(s).unwrap()
    }

    #[test]
    fn variety_verdicts() {
        assert!(!is_variety_class(&sys("x y = y x")).verdict);
        let v = is_variety_class(&sys("x = x x"));
        assert_eq!(v.witness.unwrap().2, Criterion::SemigroupNonBalanced);
        let v = is_variety_class(&sys("x' = x x x"));
        assert_eq!(v.witness.unwrap().2, Criterion::Mixed);
        assert!(!is_variety_class(&sys("x' = (x x)' x\nx y = y x")).verdict);
    }

    #[test]
    fn var_e_verdicts() {
        assert!(!equals_var_e(&sys("x = x x")).verdict);
        assert_eq!(equals_var_e(&sys("x y = x")).witness.unwrap().2, Criterion::SemigroupHeterotypical);
        assert_eq!(equals_var_e(&sys("x' = x x")).witness.unwrap().2, Criterion::Mixed);
    }

    #[test]
    fn transform_examples() {
        assert_eq!(transform_mn(&sys("x y = y x"), 0, 1), sys("x y z1 = y x z1"));
        assert_eq!(transform_mn(&sys("x = x x"), 1, 1), sys("z1 x z2 = z1 x x z2"));
        let s = sys("x' = x x\nx y = y x");
        assert_eq!(transform_mn(&s, 0, 0), s);
        assert_eq!(transform_mn(&sys("z1 = z1 z1"), 1, 0), sys("z2 z1 = z2 z1 z1"));
    }

    #[test]
    fn periodic_examples() {
        let pc = periodic_consequence(&id("x y = x y x y")).unwrap();
        assert_eq!((pc.p, pc.q), (2, 2));
        assert_eq!(pc.mixed, id("x' = x^5"));
        let pc = periodic_consequence(&id("x = x x")).unwrap();
        assert_eq!((pc.p, pc.q, pc.mixed), (1, 1, id("x' = x")));
        assert!(periodic_consequence(&id("x y = y x")).is_none());
        assert!(periodic_consequence(&id("x' = x")).is_none());
        // equal lengths: squaring x gives x^4 y = x^2 y^2, lengths 5 and 4
        let pc = periodic_consequence(&id("x x y = x y y")).unwrap();
        assert_eq!((pc.p, pc.q), (4, 1));
    }

    #[test]
    fn degree_forms() {
        assert_eq!(
            recognize_degree_form(&id("x y = x x y")),
            Some(DegreeForm { form: 5, n: 2, i: None, j: None })
        );
        assert_eq!(
            recognize_degree_form(&id("x1 x2 = (x1 x2)''")),
            Some(DegreeForm { form: 6, n: 2, i: Some(1), j: Some(2) })
        );
        assert_eq!(
            recognize_degree_form(&id("x1 x2 x3 = x1 x2'' x3")),
            Some(DegreeForm { form: 6, n: 3, i: Some(2), j: Some(2) })
        );
        assert_eq!(
            recognize_degree_form(&id("x = x''")),
            Some(DegreeForm { form: 6, n: 1, i: Some(1), j: Some(1) })
        );
        assert_eq!(recognize_degree_form(&id("x y = y x")), None);
        assert_eq!(recognize_degree_form(&id("x x = x x x")), None);
        // a double bar over a non-consecutive block is form 5 only
        assert_eq!(recognize_degree_form(&id("x y z = (x z)'' y")).unwrap().form, 5);
        assert_eq!(recognize_degree_form(&id("x y = x (y)' ")).unwrap().form, 5);
    }

    #[test]
    fn degree_identity_shapes() {
        assert_eq!(degree_identity(2, 1, 1), id("x1 x2 = x1'' x2"));
        assert_eq!(degree_identity(3, 2, 3), id("x1 x2 x3 = x1 (x2 x3)''"));
        for n in 1..=4 {
            for i in 1..=n {
                for j in i..=n {
                    let f = recognize_degree_form(&degree_identity(n, i, j)).unwrap();
                    assert_eq!((f.form, f.n, f.i, f.j), (6, n, Some(i), Some(j)));
                }
            }
        }
    }
}

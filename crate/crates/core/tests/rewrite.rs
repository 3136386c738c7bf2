mod common;

use std::collections::BTreeMap;

use common::RawAlgebra;
use epiworks_core::catalog::{catalog_models, make_epigroup, oracle_models, Named};
use epiworks_core::model::{CheckConfig, UnaryAlgebra};
use epiworks_core::rewrite::{
    factor_tail, nf_multiply, normalize_one_letter, oracle_check, OneLetterNF, Position, RewriteStep, Rule,
};
use epiworks_core::terms::{letter, w, words_up_to_weight, Letter, Word};
use proptest::prelude::*;
use rayon::prelude::*;

fn oracles() -> Vec<(String, RawAlgebra)> {
    catalog_models().into_iter().map(|(n, s)| (n, RawAlgebra::epigroup(s.table()))).collect()
}

fn x() -> Letter {
    letter("x")
}

/// Values of a one-letter word at every element of every model.
fn one_letter_values(models: &[(String, RawAlgebra)], w: &Word) -> Vec<usize> {
    models
        .iter()
        .flat_map(|(_, m)| (0..m.n).map(move |s| m.eval(w, &BTreeMap::from([(x(), s)]))))
        .collect()
}

#[test]
fn normal_forms_are_sound_up_to_weight_seven() {
    let models = oracles();
    let words = words_up_to_weight(&[x()], 7);
    assert!(words.len() > 1000);
    words.par_iter().for_each(|w| {
        let (nf, trace) = normalize_one_letter(w).unwrap();
        trace.verify().unwrap_or_else(|e| panic!("{w}: {e}"));
        assert_eq!(one_letter_values(&models, w), one_letter_values(&models, &nf.to_word()), "{w} -> {nf}");
        assert!(nf.p + nf.q >= 1);
        assert_eq!(nf.q == 0, w.is_semigroup(), "{w}");
        match (trace.steps.first(), trace.steps.last()) {
            (Some(first), Some(last)) => {
                assert_eq!(&first.before, w);
                assert_eq!(last.after, nf.to_word());
            }
            _ => assert_eq!(*w, nf.to_word()),
        }
    });
}

#[test]
fn pinned_normal_forms() {
    let nf = |s: &str| {
        let (nf, _) = normalize_one_letter(&w(s)).unwrap();
        (nf.p, nf.q)
    };
    assert_eq!(nf("x'"), (0, 1));
    assert_eq!(nf("x''"), (2, 1));
    assert_eq!(nf("(x x')'"), (1, 1));
    assert_eq!(nf("(x x x)'"), (0, 3));
}

/// Every rule instance is an identity of all epigroups.
#[test]
fn rule_instances_hold_in_oracle_models() {
    let models: Vec<RawAlgebra> = oracle_models().iter().map(|(_, s)| RawAlgebra::epigroup(s.table())).collect();
    let mut rules = Vec::new();
    for a in 0..=5 {
        for b in 0..=5 {
            rules.push(Rule::R1 { letter: x(), t: a, m: b });
            rules.push(Rule::R2 { letter: x(), t: a, m: b });
            rules.push(Rule::BarAbove { letter: x(), s: a, t: b });
            rules.push(Rule::BarBelow { letter: x(), s: a, t: b });
        }
        rules.push(Rule::BarPower { letter: x(), r: a });
        rules.push(Rule::BarBalanced { letter: x(), s: a });
    }
    for body in ["y", "x y", "x' y", "(x y)' z"] {
        rules.push(Rule::SplitTail { body: w(body) });
    }
    rules.retain(Rule::is_well_formed);
    assert!(rules.len() > 50);
    for rule in rules {
        let id = rule.instance();
        for m in &models {
            assert!(m.holds(&id.lhs, &id.rhs), "{id}");
        }
    }
}

fn arb_nf() -> impl Strategy<Value = OneLetterNF> {
    (0usize..5, 0usize..5).prop_filter("nonempty", |(p, q)| p + q > 0).prop_map(|(p, q)| OneLetterNF::new(x(), p, q))
}

proptest! {
    #[test]
    fn multiplication_is_sound(a in arb_nf(), b in arb_nf()) {
        let models = oracles();
        let (ab, trace) = nf_multiply(&a, &b).unwrap();
        trace.verify().unwrap();
        prop_assert!(trace.len() <= 1);
        let concat = a.to_word().mul(&b.to_word());
        prop_assert_eq!(one_letter_values(&models, &concat), one_letter_values(&models, &ab.to_word()));
    }

    #[test]
    fn multiplication_is_associative(a in arb_nf(), b in arb_nf(), c in arb_nf()) {
        let left = nf_multiply(&nf_multiply(&a, &b).unwrap().0, &c).unwrap().0;
        let right = nf_multiply(&a, &nf_multiply(&b, &c).unwrap().0).unwrap().0;
        let report = oracle_check(&left.to_word(), &right.to_word(), &catalog_models(), &CheckConfig::default()).unwrap();
        prop_assert!(report.agrees(), "{} vs {}", left, right);
    }

    #[test]
    fn tampered_steps_fail_verification(a in arb_nf(), b in arb_nf(), extra in 1usize..3) {
        let (_, trace) = nf_multiply(&a, &b).unwrap();
        for step in &trace.steps {
            let mut bad = step.clone();
            bad.after = bad.after.mul(&Word::atom(x()).pow(extra));
            prop_assert!(bad.verify(0).is_err());
        }
    }
}

#[test]
fn multiplication_examples() {
    let m = |a: (usize, usize), b: (usize, usize)| {
        let (r, _) = nf_multiply(&OneLetterNF::new(x(), a.0, a.1), &OneLetterNF::new(x(), b.0, b.1)).unwrap();
        (r.p, r.q)
    };
    assert_eq!(m((1, 1), (1, 1)), (2, 2));
    assert_eq!(m((0, 2), (1, 0)), (0, 1));
    assert_eq!(m((2, 0), (3, 0)), (5, 0));
}

#[test]
fn tail_factorization_is_sound_up_to_weight_six() {
    let models = oracles();
    let letters = [letter("x"), letter("y"), letter("z")];
    let words = words_up_to_weight(&letters, 6);
    words.par_iter().for_each(|u| {
        let f = factor_tail(u);
        f.trace.verify().unwrap();
        let v = f.word();
        assert_eq!(&f.z, u.last_letter());
        assert_eq!(v.last_letter(), u.last_letter());
        assert!(f.trace.len() <= u.weight());
        assert!(matches!(v.factors().last(), Some(Word::Atom(_))));
        for (name, m) in &models {
            assert!(m.holds(u, &v), "{u} vs {v} in {name}");
        }
    });
}

#[test]
fn tail_examples() {
    let f = factor_tail(&w("x y"));
    assert_eq!((f.u_star, f.z), (Some(w("x")), letter("y")));
    let f = factor_tail(&w("x'"));
    assert_eq!((f.u_star, f.z), (Some(w("(x x)'")), letter("x")));
    let f = factor_tail(&w("x (y z)'"));
    assert_eq!((f.u_star, f.z), (Some(w("x (y z y z)' y")), letter("z")));
}

#[test]
fn oracle_examples() {
    let r = oracle_check(&w("x''"), &w("x x x'"), &catalog_models(), &CheckConfig::default()).unwrap();
    assert!(r.agrees());
    assert_eq!(r.models_checked, catalog_models().len());
    let p = vec![("P".to_string(), make_epigroup(Named::P).unwrap())];
    let r = oracle_check(&w("x y"), &w("y x"), &p, &CheckConfig::default()).unwrap();
    assert_eq!(r.separations[0].rendered, "x:=e, y:=a");
}

#[test]
fn steps_outside_the_word_are_rejected() {
    let step = RewriteStep {
        before: w("x x"),
        after: w("x"),
        rule: Rule::R1 { letter: x(), t: 1, m: 1 },
        position: Position { path: vec![5], span: None },
    };
    assert!(step.verify(0).is_err());
}

mod common;

use common::{brute_force_tables, count_iso_classes, is_associative, RawAlgebra};
use epiworks_core::catalog::{
    enumerate_semigroups, enumerate_semigroups_order_four, make_epigroup, make_free_nil, make_named, CatalogError,
    Named, Structure,
};
use epiworks_core::model::{derive_epigroup, holds, nil_profile, UnaryAlgebra};
use epiworks_core::terms::{w, Identity, IdentitySystem, Word};

fn rows(s: &impl UnaryAlgebra) -> Vec<Vec<usize>> {
    RawAlgebra::of(s).mul
}

#[test]
fn labeled_counts_match_brute_force() {
    for (order, frozen) in [(1, 1), (2, 8), (3, 113)] {
        let brute = brute_force_tables(order);
        let got = enumerate_semigroups(order, false).unwrap();
        assert_eq!(brute.len(), frozen, "brute force, order {order}");
        assert_eq!(got.len(), frozen, "enumeration, order {order}");
        let mut tables: Vec<Vec<Vec<usize>>> = got.iter().map(rows).collect();
        assert!(tables.windows(2).all(|p| p[0] < p[1]), "sorted and distinct");
        tables.sort();
        let mut brute = brute;
        brute.sort();
        assert_eq!(tables, brute);
    }
}

#[test]
fn isomorphism_classes_match_brute_force() {
    for (order, frozen) in [(1, 1), (2, 5), (3, 24)] {
        let brute = count_iso_classes(&brute_force_tables(order));
        assert_eq!(brute, frozen, "order {order}");
        let reps = enumerate_semigroups(order, true).unwrap();
        assert_eq!(reps.len(), frozen);
        let tables: Vec<Vec<Vec<usize>>> = reps.iter().map(rows).collect();
        assert_eq!(count_iso_classes(&tables), frozen, "representatives are pairwise non-isomorphic");
    }
}

#[test]
fn order_four_counts() {
    // regression constants; brute force over 4^16 tables is out of reach,
    // so the labeled list is checked for associativity and the classes
    // recounted from it
    let labeled = enumerate_semigroups_order_four(false);
    assert_eq!(labeled.len(), 3492);
    assert!(labeled.iter().all(|s| is_associative(4, &rows(s))));
    let tables: Vec<Vec<Vec<usize>>> = labeled.iter().map(rows).collect();
    assert_eq!(count_iso_classes(&tables), 188);
    assert_eq!(enumerate_semigroups_order_four(true).len(), 188);
}

#[test]
fn order_out_of_range() {
    assert!(matches!(enumerate_semigroups(4, false), Err(CatalogError::ParameterRange(_))));
    assert!(matches!(enumerate_semigroups(0, true), Err(CatalogError::ParameterRange(_))));
}

fn oracle_holds(s: &impl UnaryAlgebra, lhs: &str, rhs: &str) -> bool {
    RawAlgebra::epigroup(s.table()).holds(&w(lhs), &w(rhs))
}

#[test]
fn free_nil_objects_satisfy_their_system() {
    for k in 2..=4 {
        for m in 1..=3 {
            let s = make_free_nil(k, m).unwrap();
            let n = s.size();
            assert!(is_associative(n, &rows(&s)));
            assert!(oracle_holds(&s, "x y", "y x"), "F{k}_{m}");
            assert!(oracle_holds(&s, "x x y", "x x") && oracle_holds(&s, "y x x", "x x"), "F{k}_{m}");
            let xs: Vec<Word> = (1..=k).map(|i| w(&format!("x{i}"))).collect();
            let prod = Word::product(xs);
            let zero_left = prod.mul(&w("y"));
            assert!(RawAlgebra::epigroup(s.table()).holds(&zero_left, &prod), "F{k}_{m}");
            // sizes: 1 + sum of binomials
            let binom = |a: usize, b: usize| (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1));
            let expected = 1 + (1..=(k - 1).min(m)).map(|r| binom(m, r)).sum::<usize>();
            assert_eq!(n, expected, "F{k}_{m}");
            assert!(nil_profile(&s).is_nil);
        }
    }
}

#[test]
fn free_nil_examples() {
    let f = make_free_nil(2, 2).unwrap();
    assert_eq!(f.table().names(), ["x", "y", "0"]);
    let z = f.table().index_of("0").unwrap();
    assert!((0..3).all(|a| (0..3).all(|b| f.mul(a, b) == z)));
    let f = make_free_nil(3, 2).unwrap();
    assert_eq!(f.table().names(), ["x", "y", "xy", "0"]);
    let (x, y, xy, z) = (0, 1, 2, 3);
    assert_eq!(f.mul(x, y), xy);
    assert_eq!(f.mul(x, xy), z);
    assert!(matches!(make_free_nil(1, 2), Err(CatalogError::ParameterRange(_))));
    assert!(matches!(make_free_nil(9, 9), Err(CatalogError::SizeGuard { .. })));
}

#[test]
fn named_structures() {
    let p = make_epigroup(Named::P).unwrap();
    let a = p.table().index_of("a").unwrap();
    assert_eq!(p.mul(a, a), p.table().index_of("0").unwrap());

    let n3 = make_epigroup(Named::Nil(3)).unwrap();
    assert_eq!(n3.table().names(), ["a", "a2", "a3", "0"]);
    assert_eq!(n3.pseudoinverse(0), 3);
    assert_eq!(nil_profile(&n3).nilpotency_degree, Some(4));

    let Structure::Unary(t) = make_named(Named::T).unwrap() else { panic!("T carries its own unary") };
    let (_, mismatches) = derive_epigroup(&t);
    assert_eq!(mismatches.len(), 1);
    assert_eq!(t.name(mismatches[0].element), "e");

    for name in ["P", "Pd", "C", "T", "N4", "Z6", "M3_2", "F4_3"] {
        assert_eq!(name.parse::<Named>().unwrap().to_string(), name);
    }
    assert!("Q".parse::<Named>().is_err());
    assert!(matches!(make_named(Named::Z(0)), Err(CatalogError::ParameterRange(_))));
}

#[test]
fn dual_of_p_satisfies_reversed_identities() {
    let pd = make_epigroup(Named::PDual).unwrap();
    let p_identities = IdentitySystem::parse("x y = x x y\nx x y y = y y x x\n").unwrap();
    for id in p_identities.iter() {
        let rev: Identity = id.reverse();
        assert!(holds(&pd, &rev), "{rev}");
        assert!(oracle_holds(&pd, &rev.lhs.to_string(), &rev.rhs.to_string()));
    }
    assert!(!holds(&pd, &Identity::parse("x y = x x y").unwrap()));
}

#[test]
fn monogenic_and_cyclic_parameters() {
    for i in 1..=4 {
        for p in 1..=4 {
            let s = make_epigroup(Named::Monogenic(i, p)).unwrap();
            assert_eq!(s.size(), i + p - 1);
            let c = s.cyclic(0);
            assert_eq!((c.index, c.period), (i, p));
        }
    }
    for n in 1..=6 {
        let z = make_epigroup(Named::Z(n)).unwrap();
        assert!(oracle_holds(&z, "x''", "x"));
    }
}

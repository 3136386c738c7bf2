//! Named small structures and exhaustive enumeration of small semigroups.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{CayleyTable, FiniteEpigroup, FiniteUnarySemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("structure would have {size} elements, limit is {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("unknown structure `{0}`")]
    UnknownName(String),
}

/// Largest free nil object [`make_free_nil`] will build.
pub const FREE_NIL_LIMIT: usize = 256;

/// The named structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    /// `<a, e | e^2 = e, ea = a, ae = 0>`.
    P,
    /// The dual of `P`.
    PDual,
    /// `<a, e | e^2 = e, ae = ea = a, a^2 = 0>`.
    C,
    /// The two-element semilattice `{e, 0}` with `e* = 0* = 0`.
    T,
    /// `<a | a^(k+1) = 0>`.
    Nil(usize),
    /// The cyclic group of order `n`.
    Z(usize),
    /// The monogenic semigroup with the given index and period.
    Monogenic(usize, usize),
    /// Free object on `m` letters in the variety of commutative semigroups
    /// with `x^2 = 0` and `x1...xk = 0`.
    FreeNil(usize, usize),
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::P => f.write_str("P"),
            Named::PDual => f.write_str("Pd"),
            Named::C => f.write_str("C"),
            Named::T => f.write_str("T"),
            Named::Nil(k) => write!(f, "N{k}"),
            Named::Z(n) => write!(f, "Z{n}"),
            Named::Monogenic(i, p) => write!(f, "M{i}_{p}"),
            Named::FreeNil(k, m) => write!(f, "F{k}_{m}"),
        }
    }
}

impl FromStr for Named {
    type Err = CatalogError;

    /// Accepts `P`, `Pd`, `C`, `T`, `N<k>`, `Z<n>`, `M<i>_<p>`, `F<k>_<m>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownName(s.to_owned());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        let pair = |t: &str| -> Result<(usize, usize), CatalogError> {
            let (a, b) = t.split_once('_').ok_or_else(unknown)?;
            Ok((num(a)?, num(b)?))
        };
        match s {
            "P" => Ok(Named::P),
            "Pd" => Ok(Named::PDual),
            "C" => Ok(Named::C),
            "T" => Ok(Named::T),
            _ => match s.split_at(s.chars().next().map_or(0, char::len_utf8)) {
                ("N", rest) => Ok(Named::Nil(num(rest)?)),
                ("Z", rest) => Ok(Named::Z(num(rest)?)),
                ("M", rest) => pair(rest).map(|(i, p)| Named::Monogenic(i, p)),
                ("F", rest) => pair(rest).map(|(k, m)| Named::FreeNil(k, m)),
                _ => Err(unknown()),
            },
        }
    }
}

/// A constructed structure: an epigroup, or (for `T`) a unary semigroup
/// whose unary operation is not pseudoinversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Epigroup(FiniteEpigroup),
    Unary(FiniteUnarySemigroup),
}

impl Structure {
    pub fn table(&self) -> &CayleyTable {
        use crate::model::UnaryAlgebra;
        match self {
            Structure::Epigroup(e) => e.table(),
            Structure::Unary(u) => u.table(),
        }
    }

    /// The declared unary operation, for structures that have one.
    pub fn declared_unary(&self) -> Option<&[usize]> {
        match self {
            Structure::Epigroup(_) => None,
            Structure::Unary(u) => Some(u.unary_table()),
        }
    }

    pub fn into_epigroup(self) -> Option<FiniteEpigroup> {
        match self {
            Structure::Epigroup(e) => Some(e),
            Structure::Unary(_) => None,
        }
    }
}

fn names(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}

fn table(ns: Vec<String>, f: impl Fn(usize, usize) -> usize) -> CayleyTable {
    CayleyTable::from_fn(ns, f).expect("catalog tables are associative")
}

pub fn make_named(name: Named) -> Result<Structure, CatalogError> {
    Ok(match name {
        Named::T => {
            let t = table(names("e 0"), |a, b| a.max(b));
            Structure::Unary(FiniteUnarySemigroup::new(t, vec![1, 1]).expect("shape"))
        }
        other => Structure::Epigroup(make_epigroup(other)?),
    })
}

/// Like [`make_named`] but for the epigroups only.
pub fn make_epigroup(name: Named) -> Result<FiniteEpigroup, CatalogError> {
    let t = match name {
        // e a 0: e^2 = e, ea = a, everything else 0
        Named::P => table(names("e a 0"), |x, y| match (x, y) {
            (0, 0) => 0,
            (0, 1) => 1,
            _ => 2,
        }),
        Named::PDual => return Ok(make_epigroup(Named::P)?.dual()),
        Named::C => table(names("e a 0"), |x, y| match (x, y) {
            (0, 0) => 0,
            (0, 1) | (1, 0) => 1,
            _ => 2,
        }),
        Named::T => {
            return Err(CatalogError::ParameterRange("T is not an epigroup; use make_named".into()))
        }
        Named::Nil(k) => {
            if k < 1 {
                return Err(CatalogError::ParameterRange(format!("N{k}: k must be at least 1")));
            }
            let mut ns: Vec<String> =
                (1..=k).map(|i| if i == 1 { "a".to_owned() } else { format!("a{i}") }).collect();
            ns.push("0".into());
            // element i < k is a^(i+1); k is 0
            table(ns, |x, y| if x == k || y == k { k } else { (x + y + 1).min(k) })
        }
        Named::Z(n) => {
            if n < 1 {
                return Err(CatalogError::ParameterRange(format!("Z{n}: n must be at least 1")));
            }
            let ns = (0..n).map(|i| format!("g{i}")).collect();
            table(ns, |x, y| (x + y) % n)
        }
        Named::Monogenic(i, p) => {
            if i < 1 || p < 1 {
                return Err(CatalogError::ParameterRange(format!("M{i}_{p}: index and period must be positive")));
            }
            let size = i + p - 1;
            let ns = (1..=size).map(|k| if k == 1 { "a".to_owned() } else { format!("a{k}") }).collect();
            // element x is a^(x+1)
            let reduce = |k: usize| if k < i + p { k } else { i + (k - i) % p };
            table(ns, move |x, y| reduce(x + y + 2) - 1)
        }
        Named::FreeNil(k, m) => return make_free_nil(k, m),
    };
    Ok(FiniteEpigroup::new(t))
}

const FREE_LETTERS: &[u8] = b"xyzwvutsrqponmlkjihgfedcba";

/// Free object on `m` generators of the variety defined by `x^2 = 0`,
/// `x1...xk = 0` and `xy = yx`: nonempty sets of at most `k - 1` letters
/// plus 0, multiplied by disjoint union.
pub fn make_free_nil(k: usize, m: usize) -> Result<FiniteEpigroup, CatalogError> {
    if k < 2 || m < 1 || m > FREE_LETTERS.len() {
        return Err(CatalogError::ParameterRange(format!(
            "F{k}_{m}: need k >= 2 and 1 <= m <= {}",
            FREE_LETTERS.len()
        )));
    }
    let max_set = (k - 1).min(m);
    let mut size = 1usize;
    let mut binom = 1usize;
    for r in 1..=max_set {
        binom = binom * (m - r + 1) / r;
        size = size.saturating_add(binom);
        if size > FREE_NIL_LIMIT {
            return Err(CatalogError::SizeGuard { size, limit: FREE_NIL_LIMIT });
        }
    }
    let mut sets: Vec<u32> = (1u32..(1 << m)).filter(|s| s.count_ones() as usize <= k - 1).collect();
    sets.sort_by_key(|&s| (s.count_ones(), (0..m).map(|i| (s >> i) & 1 == 0).collect::<Vec<_>>()));
    let zero = sets.len();
    let mut ns: Vec<String> = sets
        .iter()
        .map(|&s| (0..m).filter(|i| s >> i & 1 == 1).map(|i| FREE_LETTERS[i] as char).collect())
        .collect();
    ns.push("0".into());
    let t = table(ns, |a, b| {
        if a == zero || b == zero {
            return zero;
        }
        let (sa, sb) = (sets[a], sets[b]);
        let u = sa | sb;
        if sa & sb != 0 || u.count_ones() as usize > k - 1 {
            zero
        } else {
            sets.iter().position(|&s| s == u).unwrap()
        }
    });
    Ok(FiniteEpigroup::new(t))
}

/// The fixed model set written by the `catalog` command: `P`, its dual,
/// `C`, `N3`, `Z3`, `M2_2` and `F3_2`.
pub fn standard_models() -> Vec<(Named, FiniteEpigroup)> {
    [Named::P, Named::PDual, Named::C, Named::Nil(3), Named::Z(3), Named::Monogenic(2, 2), Named::FreeNil(3, 2)]
        .into_iter()
        .map(|n| (n, make_epigroup(n).expect("valid parameters")))
        .collect()
}

/// The standard models plus one representative of every isomorphism class
/// of semigroups of order at most 3.
pub fn catalog_models() -> Vec<(String, FiniteEpigroup)> {
    let mut out: Vec<(String, FiniteEpigroup)> =
        standard_models().into_iter().map(|(n, e)| (n.to_string(), e)).collect();
    for order in 1..=3 {
        for (i, e) in enumerate_semigroups(order, true).expect("order <= 3").into_iter().enumerate() {
            out.push((format!("S{order}_{i}"), e));
        }
    }
    out
}

/// The parametric families with their small parameters (`N1..N5`,
/// `Z1..Z6`, `M<i>_<p>` with `i, p <= 4`, `F<k>_<m>` with `k <= 4`,
/// `m <= 3`) followed by [`catalog_models`].
pub fn oracle_models() -> Vec<(String, FiniteEpigroup)> {
    let mut named = Vec::new();
    named.extend((1..=5).map(Named::Nil));
    named.extend((1..=6).map(Named::Z));
    for i in 1..=4 {
        named.extend((1..=4).map(|p| Named::Monogenic(i, p)));
    }
    for k in 2..=4 {
        named.extend((1..=3).map(|m| Named::FreeNil(k, m)));
    }
    let mut out: Vec<(String, FiniteEpigroup)> = named
        .into_iter()
        .map(|n| (n.to_string(), make_epigroup(n).expect("valid parameters")))
        .collect();
    out.extend(catalog_models());
    out
}

/// All semigroups on `{0, .., order-1}` (`order <= 3`), or one
/// representative per isomorphism class when `up_to_iso`. Output is sorted
/// by table.
pub fn enumerate_semigroups(order: usize, up_to_iso: bool) -> Result<Vec<FiniteEpigroup>, CatalogError> {
    if !(1..=3).contains(&order) {
        return Err(CatalogError::ParameterRange(format!(
            "order {order}: enumeration covers orders 1 to 3 (order 4 is opt-in)"
        )));
    }
    Ok(enumerate_tables(order, up_to_iso))
}

/// Order-4 enumeration, for callers that explicitly ask for it.
pub fn enumerate_semigroups_order_four(up_to_iso: bool) -> Vec<FiniteEpigroup> {
    enumerate_tables(4, up_to_iso)
}

fn enumerate_tables(order: usize, up_to_iso: bool) -> Vec<FiniteEpigroup> {
    let n = order;
    let mut tables: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut cells = vec![None; n * n];
            cells[0] = Some(first);
            let mut out = Vec::new();
            if consistent(&cells, n) {
                extend(&mut cells, 1, n, &mut out);
            }
            out
        })
        .collect();
    if up_to_iso {
        let canon: BTreeSet<Vec<usize>> = tables.par_iter().map(|t| canonical(t, n)).collect::<Vec<_>>().into_iter().collect();
        tables = canon.into_iter().collect();
    } else {
        tables.sort();
    }
    let ns: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    tables
        .into_iter()
        .map(|t| FiniteEpigroup::new(table(ns.clone(), |a, b| t[a * n + b])))
        .collect()
}

fn extend(cells: &mut Vec<Option<usize>>, pos: usize, n: usize, out: &mut Vec<Vec<usize>>) {
    if pos == n * n {
        out.push(cells.iter().map(|c| c.unwrap()).collect());
        return;
    }
    for v in 0..n {
        cells[pos] = Some(v);
        if consistent(cells, n) {
            extend(cells, pos + 1, n, out);
        }
    }
    cells[pos] = None;
}

/// No fully-determined triple violates associativity.
fn consistent(cells: &[Option<usize>], n: usize) -> bool {
    let get = |a: usize, b: usize| cells[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = get(a, b) else { continue };
            for c in 0..n {
                if let (Some(l), Some(bc)) = (get(ab, c), get(b, c)) {
                    if let Some(r) = get(a, bc) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Lexicographically least relabeling of `t` over all permutations.
fn canonical(t: &[usize], n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = t.to_vec();
    let mut relabeled = vec![0; n * n];
    loop {
        // perm maps old labels to new ones
        for a in 0..n {
            for b in 0..n {
                relabeled[perm[a] * n + perm[b]] = perm[t[a * n + b]];
            }
        }
        if relabeled < best {
            best.clone_from(&relabeled);
        }
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{nil_profile, UnaryAlgebra};

    #[test]
    fn p_has_zero_square() {
        let p = make_epigroup(Named::P).unwrap();
        assert_eq!(p.mul(1, 1), 2);
        assert_eq!(p.mul(0, 1), 1);
        assert_eq!(p.mul(1, 0), 2);
    }

    #[test]
    fn nil3_elements() {
        let n = make_epigroup(Named::Nil(3)).unwrap();
        assert_eq!(n.table().names(), ["a", "a2", "a3", "0"]);
        assert_eq!(n.pseudoinverse(0), 3);
    }

    #[test]
    fn monogenic_index_and_period() {
        for i in 1..=4 {
            for p in 1..=4 {
                let m = make_epigroup(Named::Monogenic(i, p)).unwrap();
                let d = m.cyclic(0);
                assert_eq!((d.index, d.period), (i, p));
            }
        }
    }

    #[test]
    fn free_nil_small() {
        let f = make_free_nil(2, 2).unwrap();
        assert_eq!(f.table().names(), ["x", "y", "0"]);
        assert!((0..3).all(|a| (0..3).all(|b| f.mul(a, b) == 2)));

        let f = make_free_nil(3, 2).unwrap();
        assert_eq!(f.table().names(), ["x", "y", "xy", "0"]);
        assert_eq!(f.mul(0, 1), 2);
        assert_eq!(f.mul(0, 2), 3);
        assert_eq!(nil_profile(&f).nilpotency_degree, Some(3));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(make_epigroup(Named::Nil(0)), Err(CatalogError::ParameterRange(_))));
        assert!(matches!(make_epigroup(Named::Z(0)), Err(CatalogError::ParameterRange(_))));
        assert!(matches!(make_epigroup(Named::Monogenic(0, 2)), Err(CatalogError::ParameterRange(_))));
        assert!(matches!(make_free_nil(1, 2), Err(CatalogError::ParameterRange(_))));
        assert!(matches!(make_free_nil(20, 20), Err(CatalogError::SizeGuard { .. })));
        assert!(matches!(enumerate_semigroups(4, false), Err(CatalogError::ParameterRange(_))));
    }

    #[test]
    fn names_round_trip() {
        for s in ["P", "Pd", "C", "T", "N3", "Z6", "M2_3", "F3_2"] {
            assert_eq!(s.parse::<Named>().unwrap().to_string(), s);
        }
        assert!("Q".parse::<Named>().is_err());
        assert!("M2".parse::<Named>().is_err());
    }

    #[test]
    fn t_is_not_an_epigroup_structure() {
        let t = make_named(Named::T).unwrap();
        assert_eq!(t.declared_unary(), Some(&[1, 1][..]));
    }

    #[test]
    fn permutations_cover_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}

//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's own evaluation, pseudoinverse or enumeration code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use epiworks_core::model::{CayleyTable, UnaryAlgebra};
use epiworks_core::terms::{Letter, Word};

/// Multiplication table and unary table as plain vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAlgebra {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub unary: Vec<usize>,
}

impl RawAlgebra {
    /// Reads the table off the library type but recomputes the unary
    /// operation as pseudoinversion from scratch.
    pub fn epigroup(t: &CayleyTable) -> RawAlgebra {
        let n = t.size();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| t.mul(a, b)).collect()).collect();
        let unary = (0..n).map(|x| oracle_pinv(&mul, x).1).collect();
        RawAlgebra { n, mul, unary }
    }

    /// Takes both operations from a library structure as they are.
    pub fn of<S: UnaryAlgebra + ?Sized>(s: &S) -> RawAlgebra {
        let n = s.size();
        RawAlgebra {
            n,
            mul: (0..n).map(|a| (0..n).map(|b| s.mul(a, b)).collect()).collect(),
            unary: (0..n).map(|a| s.unary(a)).collect(),
        }
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (1..k).fold(x, |acc, _| self.mul[acc][x])
    }

    pub fn eval(&self, w: &Word, a: &BTreeMap<Letter, usize>) -> usize {
        match w {
            Word::Atom(l) => a[l],
            Word::Bar(b) => self.unary[self.eval(b, a)],
            Word::Product(fs) => {
                let mut it = fs.iter().map(|f| self.eval(f, a));
                let first = it.next().unwrap();
                it.fold(first, |acc, v| self.mul[acc][v])
            }
        }
    }

    /// Evaluation with the value of `letters[i]` at `vals[i]`.
    pub fn eval_at(&self, w: &Word, letters: &[Letter], vals: &[usize]) -> usize {
        match w {
            Word::Atom(l) => vals[letters.iter().position(|k| k == l).expect("bound letter")],
            Word::Bar(b) => self.unary[self.eval_at(b, letters, vals)],
            Word::Product(fs) => {
                let mut it = fs.iter().map(|f| self.eval_at(f, letters, vals));
                let first = it.next().unwrap();
                it.fold(first, |acc, v| self.mul[acc][v])
            }
        }
    }

    /// First assignment (first letter most significant) with different values.
    pub fn separate(&self, lhs: &Word, rhs: &Word) -> Option<BTreeMap<Letter, usize>> {
        let letters: Vec<Letter> = lhs.content().union(&rhs.content()).cloned().collect();
        let total = self.n.pow(letters.len() as u32);
        let mut vals = vec![0; letters.len()];
        (0..total)
            .find(|&code| {
                let mut c = code;
                for v in vals.iter_mut().rev() {
                    *v = c % self.n;
                    c /= self.n;
                }
                self.eval_at(lhs, &letters, &vals) != self.eval_at(rhs, &letters, &vals)
            })
            .map(|_| letters.iter().cloned().zip(vals.iter().copied()).collect())
    }

    pub fn holds(&self, lhs: &Word, rhs: &Word) -> bool {
        self.separate(lhs, rhs).is_none()
    }
}

/// `(x^omega, x')` by search among the powers of `x`: `x^omega` is the
/// only idempotent power, and `x'` the only power `y` with
/// `x y = y x = x^omega` and `x^omega y = y x^omega = y`.
pub fn oracle_pinv(mul: &[Vec<usize>], x: usize) -> (usize, usize) {
    let n = mul.len();
    let mut powers = vec![x];
    while powers.len() < 2 * n + 2 {
        powers.push(mul[*powers.last().unwrap()][x]);
    }
    let idempotents: BTreeSet<usize> = powers.iter().copied().filter(|&p| mul[p][p] == p).collect();
    assert_eq!(idempotents.len(), 1, "a monogenic subsemigroup has one idempotent");
    let e = *idempotents.iter().next().unwrap();
    let inverses: BTreeSet<usize> = powers
        .iter()
        .copied()
        .filter(|&y| mul[x][y] == e && mul[y][x] == e && mul[y][e] == y && mul[e][y] == y)
        .collect();
    assert_eq!(inverses.len(), 1, "pseudoinverse must be unique");
    (e, *inverses.iter().next().unwrap())
}

pub fn is_associative(n: usize, mul: &[Vec<usize>]) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| mul[mul[a][b]][c] == mul[a][mul[b][c]])))
}

/// Every associative table on `n` elements, by running through all
/// `n^(n^2)` candidates.
pub fn brute_force_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut flat = vec![0; cells];
            for v in flat.iter_mut().rev() {
                *v = code % n;
                code /= n;
            }
            let mul: Vec<Vec<usize>> = flat.chunks(n).map(<[usize]>::to_vec).collect();
            is_associative(n, &mul).then_some(mul)
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of isomorphism classes among the given tables.
pub fn count_iso_classes(tables: &[Vec<Vec<usize>>]) -> usize {
    let canon: BTreeSet<Vec<Vec<usize>>> = tables
        .iter()
        .map(|mul| {
            let n = mul.len();
            permutations(n)
                .iter()
                .map(|p| {
                    // relabel a -> p[a]
                    let mut inv = vec![0; n];
                    for (a, &pa) in p.iter().enumerate() {
                        inv[pa] = a;
                    }
                    (0..n).map(|i| (0..n).map(|j| p[mul[inv[i]][inv[j]]]).collect()).collect()
                })
                .min()
                .unwrap()
        })
        .collect();
    canon.len()
}

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture_scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "proof"))
        .collect();
    v.sort();
    v
}

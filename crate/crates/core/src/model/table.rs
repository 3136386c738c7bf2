use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// A finite multiplication table over elements `0..n`. Constructed only
/// through [`validate_table`], so every value is associative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleyTable {
    names: Vec<String>,
    /// Row-major; `mult[a * n + b] = a * b`.
    mult: Vec<usize>,
}

/// Checks shape and associativity. The first failing triple in
/// lexicographic order is reported.
pub fn validate_table(names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<CayleyTable, ModelError> {
    let n = names.len();
    if n == 0 {
        return Err(ModelError::Shape("a table needs at least one element".into()));
    }
    let distinct: BTreeSet<&String> = names.iter().collect();
    if distinct.len() != n {
        return Err(ModelError::Shape("element names must be distinct".into()));
    }
    if rows.len() != n {
        return Err(ModelError::Shape(format!("expected {n} rows, found {}", rows.len())));
    }
    let mut mult = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ModelError::Shape(format!(
                "row {} has {} entries, expected {n}",
                names[i],
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(ModelError::Shape(format!("row {}: entry {bad} out of range", names[i])));
        }
        mult.extend_from_slice(row);
    }
    let table = CayleyTable { names, mult };
    if let Some((a, b, c)) = table.first_non_associative() {
        return Err(ModelError::Associativity {
            a: table.names[a].clone(),
            b: table.names[b].clone(),
            c: table.names[c].clone(),
        });
    }
    Ok(table)
}

impl CayleyTable {
    /// Table from a product function on `0..names.len()`.
    pub fn from_fn(
        names: Vec<String>,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<CayleyTable, ModelError> {
        let n = names.len();
        let rows = (0..n).map(|a| (0..n).map(|b| product(a, b)).collect()).collect();
        validate_table(names, rows)
    }

    fn first_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.names.len() + b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    /// The flat row-major table.
    pub fn entries(&self) -> &[usize] {
        &self.mult
    }

    /// `x^k` for `k >= 1`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1);
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    /// Transposed table: `a *' b = b * a`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.size();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = self.mul(b, a);
            }
        }
        CayleyTable { names: self.names.clone(), mult }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The two-sided zero, if any.
    pub fn zero(&self) -> Option<usize> {
        let n = self.size();
        (0..n).find(|&z| (0..n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }
}

/// Anything with an associative multiplication and a unary operation over
/// elements `0..n`.
pub trait UnaryAlgebra: Sync {
    fn table(&self) -> &CayleyTable;
    fn unary(&self, a: usize) -> usize;

    fn size(&self) -> usize {
        self.table().size()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table().mul(a, b)
    }

    fn name(&self, a: usize) -> &str {
        self.table().name(a)
    }
}

/// A Cayley table together with an explicitly given unary operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteUnarySemigroup {
    table: CayleyTable,
    unary: Vec<usize>,
}

impl FiniteUnarySemigroup {
    pub fn new(table: CayleyTable, unary: Vec<usize>) -> Result<FiniteUnarySemigroup, ModelError> {
        let n = table.size();
        if unary.len() != n {
            return Err(ModelError::Shape(format!(
                "unary table has {} entries, expected {n}",
                unary.len()
            )));
        }
        if unary.iter().any(|&u| u >= n) {
            return Err(ModelError::Shape("unary entry out of range".into()));
        }
        Ok(FiniteUnarySemigroup { table, unary })
    }

    pub fn unary_table(&self) -> &[usize] {
        &self.unary
    }

    /// Same unary operation on the transposed table.
    pub fn dual(&self) -> FiniteUnarySemigroup {
        FiniteUnarySemigroup { table: self.table.transpose(), unary: self.unary.clone() }
    }
}

impl UnaryAlgebra for FiniteUnarySemigroup {
    fn table(&self) -> &CayleyTable {
        &self.table
    }

    fn unary(&self, a: usize) -> usize {
        self.unary[a]
    }
}

pub fn dual(s: &FiniteUnarySemigroup) -> FiniteUnarySemigroup {
    s.dual()
}

/// Contents of a table file: the table and, when a `unary:` line is
/// present, the declared unary operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFile {
    pub table: CayleyTable,
    pub unary: Option<Vec<usize>>,
}

impl TableFile {
    pub fn parse(text: &str) -> Result<TableFile, ModelError> {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        let mut it = lines.into_iter();
        let fmt_err = |line: usize, message: String| ModelError::Format { line, message };

        let (line, toks) = it.next().ok_or_else(|| fmt_err(0, "empty table file".into()))?;
        let n: usize = match toks.as_slice() {
            [tok] => tok.parse().map_err(|_| fmt_err(line, format!("expected element count, found `{tok}`")))?,
            _ => return Err(fmt_err(line, "first line must be the element count".into())),
        };
        if n == 0 {
            return Err(fmt_err(line, "element count must be positive".into()));
        }
        let (line, names) = it.next().ok_or_else(|| fmt_err(line, "missing element names".into()))?;
        if names.len() != n {
            return Err(fmt_err(line, format!("expected {n} element names, found {}", names.len())));
        }
        if names.iter().any(|nm| nm.ends_with(':')) {
            return Err(fmt_err(line, "element names may not end with `:`".into()));
        }
        let names: Vec<String> = names.into_iter().map(str::to_owned).collect();
        let lookup = |line: usize, tok: &str| {
            names
                .iter()
                .position(|nm| nm == tok)
                .ok_or_else(|| fmt_err(line, format!("unknown element `{tok}`")))
        };
        let mut rows = Vec::with_capacity(n);
        let mut last_line = line;
        for r in 0..n {
            let (line, toks) = it
                .next()
                .ok_or_else(|| fmt_err(last_line, format!("missing row for `{}`", names[r])))?;
            if toks.len() != n {
                return Err(fmt_err(line, format!("row has {} entries, expected {n}", toks.len())));
            }
            rows.push(toks.iter().map(|t| lookup(line, t)).collect::<Result<Vec<_>, _>>()?);
            last_line = line;
        }
        let mut unary = None;
        if let Some((line, toks)) = it.next() {
            if toks[0] != "unary:" {
                return Err(fmt_err(line, format!("unexpected `{}` after the table", toks[0])));
            }
            // names may follow on the same line or on the next one
            let (line, vals) = if toks.len() > 1 {
                (line, toks[1..].to_vec())
            } else {
                it.next().ok_or_else(|| fmt_err(line, "missing unary images".into()))?
            };
            if vals.len() != n {
                return Err(fmt_err(line, format!("expected {n} unary images, found {}", vals.len())));
            }
            unary = Some(vals.iter().map(|t| lookup(line, t)).collect::<Result<Vec<_>, _>>()?);
            if let Some((line, _)) = it.next() {
                return Err(fmt_err(line, "trailing content after the unary line".into()));
            }
        }
        let table = validate_table(names, rows)?;
        Ok(TableFile { table, unary })
    }

    pub fn render(&self) -> String {
        render_table(&self.table, self.unary.as_deref())
    }
}

pub fn render_table(table: &CayleyTable, unary: Option<&[usize]>) -> String {
    let n = table.size();
    let mut out = String::new();
    writeln!(out, "{n}").unwrap();
    writeln!(out, "{}", table.names().join(" ")).unwrap();
    for a in 0..n {
        let row: Vec<&str> = (0..n).map(|b| table.name(table.mul(a, b))).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if let Some(u) = unary {
        let imgs: Vec<&str> = u.iter().map(|&v| table.name(v)).collect();
        writeln!(out, "unary: {}", imgs.join(" ")).unwrap();
    }
    out
}

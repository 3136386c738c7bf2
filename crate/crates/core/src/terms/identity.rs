use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::parse::{parse_equation, ParseError, Rhs};
use super::word::{Letter, Word};

/// An identity `lhs = rhs` over unary words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }

    pub fn reverse(&self) -> Identity {
        Identity::new(self.lhs.reverse(), self.rhs.reverse())
    }

    pub fn swap(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn substitute(&self, map: &BTreeMap<Letter, Word>) -> Identity {
        Identity::new(self.lhs.substitute(map), self.rhs.substitute(map))
    }

    pub fn rename(&self, map: &BTreeMap<Letter, Letter>) -> Identity {
        Identity::new(self.lhs.rename(map), self.rhs.rename(map))
    }

    /// Letters renamed `a1, a2, ...` in order of first occurrence (lhs, then
    /// rhs). Two identities differ by a bijective renaming iff their
    /// canonical renamings coincide.
    pub fn canonical_renaming(&self) -> Identity {
        let mut map = BTreeMap::new();
        for l in self.lhs.letters().into_iter().chain(self.rhs.letters()) {
            let next = map.len() + 1;
            map.entry(l.clone()).or_insert_with(|| Letter::indexed('a', next));
        }
        self.rename(&map)
    }

    pub fn flags(&self) -> IdentityFlags {
        classify_identity(self)
    }

    /// Parses a single identity; `w = 0` is rejected here (it stands for two
    /// identities, see [`parse_identity_line`]).
    pub fn parse(text: &str) -> Result<Identity, ParseError> {
        match parse_equation(text)? {
            (lhs, Rhs::Word(rhs)) => Ok(Identity::new(lhs, rhs)),
            (_, Rhs::Zero) => Err(ParseError::new(
                text.find('0').unwrap_or(0),
                "`= 0` abbreviates two identities; use a system",
            )),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::parse(s)
    }
}

/// Parses one identity line, expanding `w = 0` into `w z = w` and `z w = w`.
pub fn parse_identity_line(text: &str) -> Result<Vec<Identity>, ParseError> {
    match parse_equation(text)? {
        (lhs, Rhs::Word(rhs)) => Ok(vec![Identity::new(lhs, rhs)]),
        (lhs, Rhs::Zero) => {
            let [a, b] = expand_zero(&lhs);
            Ok(vec![a, b])
        }
    }
}

/// The pair `w z = w`, `z w = w` abbreviated by `w = 0`, with `z` a letter
/// not occurring in `w` (`z` itself when free, else `z1`, `z2`, ...).
pub fn expand_zero(lhs: &Word) -> [Identity; 2] {
    let used = lhs.content();
    let z = Letter::new("z").unwrap();
    let z = if used.contains(&z) { FreshLetters::new(used).next().unwrap() } else { z };
    let zw = Word::atom(z);
    [
        Identity::new(lhs.mul(&zw), lhs.clone()),
        Identity::new(zw.mul(lhs), lhs.clone()),
    ]
}

/// Syntactic classification of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFlags {
    pub is_semigroup: bool,
    pub is_balanced: bool,
    pub is_homotypical: bool,
    pub is_heterotypical: bool,
    pub is_mixed: bool,
    pub is_strictly_unary: bool,
    pub is_permutational: bool,
    pub is_linear_lhs: bool,
    pub is_linear_rhs: bool,
}

impl IdentityFlags {
    /// Names of the flags that are set, in declaration order.
    pub fn names(&self) -> Vec<&'static str> {
        let all = [
            ("semigroup", self.is_semigroup),
            ("balanced", self.is_balanced),
            ("homotypical", self.is_homotypical),
            ("heterotypical", self.is_heterotypical),
            ("mixed", self.is_mixed),
            ("strictly-unary", self.is_strictly_unary),
            ("permutational", self.is_permutational),
            ("linear-lhs", self.is_linear_lhs),
            ("linear-rhs", self.is_linear_rhs),
        ];
        all.into_iter().filter(|(_, on)| *on).map(|(n, _)| n).collect()
    }
}

pub fn classify_identity(id: &Identity) -> IdentityFlags {
    let lsg = id.lhs.is_semigroup();
    let rsg = id.rhs.is_semigroup();
    let is_semigroup = lsg && rsg;
    // balancedness is only meaningful for semigroup identities
    let is_balanced = is_semigroup && id.lhs.occurrences() == id.rhs.occurrences();
    let is_homotypical = id.lhs.content() == id.rhs.content();
    let is_linear_lhs = id.lhs.is_linear();
    let is_linear_rhs = id.rhs.is_linear();
    let is_permutational = is_linear_lhs
        && is_linear_rhs
        && is_homotypical
        && id.lhs.length() == id.rhs.length()
        && !id.is_trivial();
    IdentityFlags {
        is_semigroup,
        is_balanced,
        is_homotypical,
        is_heterotypical: !is_homotypical,
        is_mixed: lsg != rsg,
        is_strictly_unary: !lsg && !rsg,
        is_permutational,
        is_linear_lhs,
        is_linear_rhs,
    }
}

/// Deterministic supply of letters `z1, z2, ...` avoiding a given set.
#[derive(Debug, Clone)]
pub struct FreshLetters {
    used: BTreeSet<Letter>,
    next: usize,
}

impl FreshLetters {
    pub fn new(used: BTreeSet<Letter>) -> FreshLetters {
        FreshLetters { used, next: 1 }
    }
}

impl Iterator for FreshLetters {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        loop {
            let candidate = Letter::indexed('z', self.next);
            self.next += 1;
            if !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return Some(candidate);
            }
        }
    }
}

/// An ordered list of identities.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdentitySystem {
    pub identities: Vec<Identity>,
}

impl IdentitySystem {
    pub fn new(identities: Vec<Identity>) -> IdentitySystem {
        IdentitySystem { identities }
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Identity> {
        self.identities.iter()
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        self.identities.iter().flat_map(Identity::content).collect()
    }

    /// Letters that occur in no identity of the system.
    pub fn fresh_letters(&self) -> FreshLetters {
        FreshLetters::new(self.content())
    }

    /// Parses the system file format: one identity per line, `#` comments,
    /// blank lines ignored, `w = 0` expanded into two identities.
    pub fn parse(text: &str) -> Result<IdentitySystem, SystemParseError> {
        let mut identities = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ids = parse_identity_line(line)
                .map_err(|source| SystemParseError { line: i + 1, source })?;
            identities.extend(ids);
        }
        Ok(IdentitySystem { identities })
    }

    pub fn render(&self) -> String {
        self.identities.iter().map(|id| format!("{id}\n")).collect()
    }
}

impl fmt::Debug for IdentitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.identities).finish()
    }
}

impl FromIterator<Identity> for IdentitySystem {
    fn from_iter<T: IntoIterator<Item = Identity>>(iter: T) -> Self {
        IdentitySystem { identities: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a IdentitySystem {
    type Item = &'a Identity;
    type IntoIter = std::slice::Iter<'a, Identity>;

    fn into_iter(self) -> Self::IntoIter {
        self.identities.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {source}")]
pub struct SystemParseError {
    pub line: usize,
    pub source: ParseError,
}

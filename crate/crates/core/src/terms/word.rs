use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::parse::{parse_word, ParseError};

/// A letter of the free unary semigroup: a lowercase ASCII letter followed by
/// optional decimal digits (`x`, `x1`, `y12`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Letter(String);

impl Letter {
    pub fn new(name: &str) -> Result<Letter, ParseError> {
        if is_letter_name(name) {
            Ok(Letter(name.to_owned()))
        } else {
            Err(ParseError::new(0, format!("`{name}` is not a letter name")))
        }
    }

    /// Builds `base` followed by the decimal index, e.g. `x3`.
    pub fn indexed(base: char, index: usize) -> Letter {
        assert!(base.is_ascii_lowercase(), "letter base must be a lowercase ASCII letter");
        Letter(format!("{base}{index}"))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn sort_key(&self) -> (u8, usize, &str) {
        let suffix = &self.0[1..];
        (self.0.as_bytes()[0], suffix.len(), suffix)
    }
}

pub(crate) fn is_letter_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_digit())
}

// x < x1 < x2 < x10 < y
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Letter {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::new(s)
    }
}

impl TryFrom<String> for Letter {
    type Error = ParseError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Letter::new(&value)
    }
}

impl From<Letter> for String {
    fn from(value: Letter) -> Self {
        value.0
    }
}

/// A unary word in canonical form.
///
/// Products are kept flat: a `Product` never has a `Product` as a direct
/// factor and always has at least two factors, so two words are equal in the
/// free unary semigroup exactly when they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Word {
    Atom(Letter),
    Product(Vec<Word>),
    Bar(Box<Word>),
}

impl Word {
    pub fn atom(letter: Letter) -> Word {
        Word::Atom(letter)
    }

    pub fn bar(body: Word) -> Word {
        Word::Bar(Box::new(body))
    }

    /// Flattened product of the given words. Panics on an empty iterator,
    /// since the free unary semigroup has no empty word.
    pub fn product<I: IntoIterator<Item = Word>>(factors: I) -> Word {
        let mut flat = Vec::new();
        for w in factors {
            match w {
                Word::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => panic!("empty product"),
            1 => flat.pop().unwrap(),
            _ => Word::Product(flat),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::product([self.clone(), other.clone()])
    }

    /// `self` repeated `n` times; `n` must be positive.
    pub fn pow(&self, n: usize) -> Word {
        assert!(n > 0, "power must be positive");
        Word::product(std::iter::repeat(self.clone()).take(n))
    }

    /// Factors of the word viewed as a product (a single factor otherwise).
    pub fn factors(&self) -> &[Word] {
        match self {
            Word::Product(fs) => fs,
            _ => std::slice::from_ref(self),
        }
    }

    pub fn is_semigroup(&self) -> bool {
        match self {
            Word::Atom(_) => true,
            Word::Bar(_) => false,
            Word::Product(fs) => fs.iter().all(Word::is_semigroup),
        }
    }

    /// Number of multiplications plus number of bars.
    pub fn weight(&self) -> usize {
        match self {
            Word::Atom(_) => 0,
            Word::Bar(b) => 1 + b.weight(),
            Word::Product(fs) => fs.len() - 1 + fs.iter().map(Word::weight).sum::<usize>(),
        }
    }

    pub fn length(&self) -> Length {
        if self.is_semigroup() {
            Length::Finite(self.letter_count())
        } else {
            Length::Infinite
        }
    }

    fn letter_count(&self) -> usize {
        match self {
            Word::Atom(_) => 1,
            Word::Bar(b) => b.letter_count(),
            Word::Product(fs) => fs.iter().map(Word::letter_count).sum(),
        }
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>) {
        match self {
            Word::Atom(l) => {
                out.insert(l.clone());
            }
            Word::Bar(b) => b.collect_letters(out),
            Word::Product(fs) => fs.iter().for_each(|f| f.collect_letters(out)),
        }
    }

    /// Letters in order of occurrence, with repetitions.
    pub fn letters(&self) -> Vec<&Letter> {
        let mut out = Vec::new();
        self.push_letters(&mut out);
        out
    }

    fn push_letters<'a>(&'a self, out: &mut Vec<&'a Letter>) {
        match self {
            Word::Atom(l) => out.push(l),
            Word::Bar(b) => b.push_letters(out),
            Word::Product(fs) => fs.iter().for_each(|f| f.push_letters(out)),
        }
    }

    /// The last letter `t(w)`; bars are transparent.
    pub fn last_letter(&self) -> &Letter {
        match self {
            Word::Atom(l) => l,
            Word::Bar(b) => b.last_letter(),
            Word::Product(fs) => fs.last().expect("products are nonempty").last_letter(),
        }
    }

    pub fn first_letter(&self) -> &Letter {
        match self {
            Word::Atom(l) => l,
            Word::Bar(b) => b.first_letter(),
            Word::Product(fs) => fs[0].first_letter(),
        }
    }

    /// Occurrence counts per letter, defined for semigroup words only.
    pub fn occurrences(&self) -> Option<BTreeMap<Letter, usize>> {
        if !self.is_semigroup() {
            return None;
        }
        let mut counts = BTreeMap::new();
        for l in self.letters() {
            *counts.entry(l.clone()).or_insert(0) += 1;
        }
        Some(counts)
    }

    /// A semigroup word in which no letter repeats.
    pub fn is_linear(&self) -> bool {
        match self.occurrences() {
            Some(counts) => counts.values().all(|&c| c == 1),
            None => false,
        }
    }

    pub fn stats(&self) -> WordStats {
        WordStats {
            weight: self.weight(),
            length: self.length(),
            content: self.content(),
            last_letter: self.last_letter().clone(),
            occurrences: self.occurrences(),
        }
    }

    /// Replaces every letter `l` in the domain of `map` by `map[l]`.
    pub fn substitute(&self, map: &BTreeMap<Letter, Word>) -> Word {
        match self {
            Word::Atom(l) => map.get(l).cloned().unwrap_or_else(|| self.clone()),
            Word::Bar(b) => Word::bar(b.substitute(map)),
            Word::Product(fs) => Word::product(fs.iter().map(|f| f.substitute(map))),
        }
    }

    /// Mirror image: every product is read right to left.
    pub fn reverse(&self) -> Word {
        match self {
            Word::Atom(_) => self.clone(),
            Word::Bar(b) => Word::bar(b.reverse()),
            Word::Product(fs) => Word::Product(fs.iter().rev().map(Word::reverse).collect()),
        }
    }

    /// Renames letters through `map`; letters outside the map stay fixed.
    pub fn rename(&self, map: &BTreeMap<Letter, Letter>) -> Word {
        match self {
            Word::Atom(l) => Word::Atom(map.get(l).cloned().unwrap_or_else(|| l.clone())),
            Word::Bar(b) => Word::bar(b.rename(map)),
            Word::Product(fs) => Word::Product(fs.iter().map(|f| f.rename(map)).collect()),
        }
    }

    /// Subterm addressed by a path of child indices (bar body is child 0).
    pub fn at(&self, path: &[usize]) -> Option<&Word> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Word::Atom(_) => None,
                Word::Bar(b) if i == 0 => b.at(rest),
                Word::Bar(_) => None,
                Word::Product(fs) => fs.get(i)?.at(rest),
            },
        }
    }

    /// Replaces the factors `span` of the product at `path` (or the whole
    /// subterm when `span` is `None`) and re-canonicalizes.
    pub fn replace(
        &self,
        path: &[usize],
        span: Option<std::ops::Range<usize>>,
        replacement: &Word,
    ) -> Option<Word> {
        match path.split_first() {
            None => match span {
                None => Some(replacement.clone()),
                Some(range) => {
                    let fs = self.factors();
                    if range.start >= range.end || range.end > fs.len() {
                        return None;
                    }
                    let mut out: Vec<Word> = fs[..range.start].to_vec();
                    out.push(replacement.clone());
                    out.extend_from_slice(&fs[range.end..]);
                    Some(Word::product(out))
                }
            },
            Some((&i, rest)) => match self {
                Word::Atom(_) => None,
                Word::Bar(b) if i == 0 => Some(Word::bar(b.replace(rest, span, replacement)?)),
                Word::Bar(_) => None,
                Word::Product(fs) => {
                    let child = fs.get(i)?.replace(rest, span, replacement)?;
                    let mut out = fs.clone();
                    out[i] = child;
                    Some(Word::product(out))
                }
            },
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Atom(l) => write!(f, "{l}"),
            Word::Bar(b) => match **b {
                Word::Product(_) => write!(f, "({b})'"),
                _ => write!(f, "{b}'"),
            },
            Word::Product(fs) => {
                for (i, w) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{w}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl TryFrom<String> for Word {
    type Error = ParseError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        parse_word(&value)
    }
}

impl From<Word> for String {
    fn from(value: Word) -> Self {
        value.to_string()
    }
}

/// Word length: a letter count for semigroup words, infinite otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn exceeds(self, n: usize) -> bool {
        match self {
            Length::Finite(l) => l > n,
            Length::Infinite => true,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordStats {
    pub weight: usize,
    pub length: Length,
    pub content: BTreeSet<Letter>,
    pub last_letter: Letter,
    /// Present only for semigroup words.
    pub occurrences: Option<BTreeMap<Letter, usize>>,
}

/// Parses `text` as a word; convenience for tests and fixtures.
pub fn w(text: &str) -> Word {
    parse_word(text).unwrap_or_else(|e| panic!("bad word `{text}`: {e}"))
}

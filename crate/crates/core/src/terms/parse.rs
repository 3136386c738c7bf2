//! Recursive-descent parser for the word grammar.
//!
//! ```text
//! word     := term+
//! term     := primary postfix*
//! primary  := letter | '(' word ')'
//! postfix  := '\'' | '^' digits
//! letter   := [a-z][0-9]*
//! ```
//!
//! Juxtaposition is multiplication and `^k` is sugar for a k-fold product.

use std::fmt;

use thiserror::Error;

use super::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset in the input where the problem was detected.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError { position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.position, self.message)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos, message))
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_lowercase() || c == b'(' {
                factors.push(self.term()?);
            } else {
                break;
            }
        }
        if factors.is_empty() {
            return match self.peek() {
                None => self.error("expected a word, found end of input"),
                Some(c) => self.error(format!("expected a word, found `{}`", c as char)),
            };
        }
        Ok(Word::product(factors))
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let mut w = self.primary()?;
        // postfix operators attach without intervening whitespace or with it;
        // both `x '` and `x'` read as a bar
        loop {
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    w = Word::bar(w);
                }
                Some(b'^') => {
                    self.pos += 1;
                    let n = self.exponent()?;
                    w = w.pow(n);
                }
                _ => return Ok(w),
            }
        }
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a positive integer after `^`");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match digits.parse::<usize>() {
            Ok(n) if n > 0 && n <= 4096 => Ok(n),
            _ => Err(ParseError::new(start, format!("exponent `{digits}` out of range 1..=4096"))),
        }
    }

    fn primary(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(b')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Word::atom(Letter::new(name).map_err(|e| ParseError::new(start, e.message))?))
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected trailing `{}`", c as char)),
        }
    }
}

pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut p = Parser::new(text);
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Right-hand side of an identity line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    Word(Word),
    Zero,
}

/// Parses `<word> = <word>` or `<word> = 0`.
pub fn parse_equation(text: &str) -> Result<(Word, Rhs), ParseError> {
    let mut p = Parser::new(text);
    let lhs = p.word()?;
    if p.peek() != Some(b'=') {
        return p.error("expected `=`");
    }
    p.pos += 1;
    let rhs = if p.peek() == Some(b'0') {
        p.pos += 1;
        Rhs::Zero
    } else {
        Rhs::Word(p.word()?)
    };
    p.finish()?;
    Ok((lhs, rhs))
}

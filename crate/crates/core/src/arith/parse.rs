//! Character cursor used by the polynomial parsers.

use num::BigInt;

use super::Rat;
use crate::error::{Error, Result};

pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Self {
        // U+2212 is accepted as a minus sign.
        let chars = src.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        Cursor { chars, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    /// A run of ASCII digits (after whitespace), or `None` if absent.
    pub fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub fn nat(&mut self) -> Result<u32> {
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.error("exponent too large")),
            None => self.error("expected a natural number"),
        }
    }

    /// `int | int '/' posint`, or `None` if no digits follow.
    pub fn rational(&mut self) -> Result<Option<Rat>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digit run");
        if self.eat('/') {
            let Some(den) = self.digits() else {
                return self.error("expected denominator");
            };
            let den: BigInt = den.parse().expect("digit run");
            Ok(Some(Rat::new(num, den)?))
        } else {
            Ok(Some(Rat::from_int(num)))
        }
    }

    /// An identifier `[A-Za-z_][A-Za-z0-9_]*`, or `None` if absent.
    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(start).is_some_and(|c| c.is_ascii_alphabetic() || *c == '_') {
            return None;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    /// Optional leading sign; returns -1 or +1.
    pub fn sign(&mut self) -> Option<i32> {
        if self.eat('+') {
            Some(1)
        } else if self.eat('-') {
            Some(-1)
        } else {
            None
        }
    }
}

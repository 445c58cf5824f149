//! Binary words over the alphabet `{0, 1}`.
//!
//! A [`Word`] is an immutable sequence of [`Symbol`]s. Words order
//! lexicographically with `'0' < '1'` and serialize as ASCII strings of
//! `'0'`/`'1'` characters everywhere: files, CLI output and `Display`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A binary letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Symbol {
    Zero = 0,
    One = 1,
}

impl Symbol {
    pub const ALL: [Symbol; 2] = [Symbol::Zero, Symbol::One];

    pub fn swapped(self) -> Symbol {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
        }
    }

    pub fn from_bit(bit: u64) -> Option<Symbol> {
        match bit {
            0 => Some(Symbol::Zero),
            1 => Some(Symbol::One),
            _ => None,
        }
    }
}

impl TryFrom<char> for Symbol {
    type Error = Error;

    fn try_from(c: char) -> Result<Self, Error> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            other => Err(Error::InvalidSymbol(other)),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite binary word.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: Symbol) -> usize {
        self.0.iter().filter(|&&s| s == letter).count()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// True iff the word reads the same backwards. The empty word is a
    /// palindrome.
    pub fn is_palindrome(&self) -> bool {
        is_palindrome_slice(&self.0)
    }

    /// Exchanges every `0` with `1` and vice versa.
    pub fn swap_letters(&self) -> Word {
        Word(self.0.iter().map(|s| s.swapped()).collect())
    }

    /// The first `len` symbols, or the whole word if it is shorter.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }
}

pub(crate) fn is_palindrome_slice(s: &[Symbol]) -> bool {
    s.iter().eq(s.iter().rev())
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<&[Symbol]> for Word {
    fn from(s: &[Symbol]) -> Self {
        Word(s.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars().map(Symbol::try_from).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|s| s.as_char()).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("10110").to_string(), "10110");
        assert_eq!(w("").len(), 0);
        assert!(matches!(
            "102".parse::<Word>(),
            Err(Error::InvalidSymbol('2'))
        ));
    }

    #[test]
    fn swap_letters_examples() {
        assert_eq!(w("10110").swap_letters(), w("01001"));
        assert_eq!(w("").swap_letters(), w(""));
    }

    #[test]
    fn order_is_lexicographic_zero_first() {
        let mut v = vec![w("11"), w("01"), w("10")];
        v.sort();
        assert_eq!(v, vec![w("01"), w("10"), w("11")]);
    }

    #[test]
    fn counts_and_palindromes() {
        assert_eq!(w("10110").count(Symbol::Zero), 2);
        assert_eq!(w("10110").count(Symbol::One), 3);
        assert!(w("101").is_palindrome());
        assert!(!w("10").is_palindrome());
        assert!(w("").is_palindrome());
    }

    #[test]
    fn serde_as_string() {
        let json = serde_json::to_string(&w("0110")).unwrap();
        assert_eq!(json, "\"0110\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w("0110"));
        assert!(serde_json::from_str::<Word>("\"01a\"").is_err());
    }
}

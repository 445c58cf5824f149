//! Finite Fibonacci words and prefixes of the infinite Fibonacci word.
//!
//! Two conventions are supported:
//!
//! * [`Convention::ConcatRule`]: `f_0 = 0`, `f_1 = 1`, `f_n = f_{n-1} f_{n-2}`.
//!   The limit word starts `1011010110110…` and is 1-heavy. This is the
//!   default for every analysis.
//! * [`Convention::MorphismFix`]: `f_1 = 1`, `f_2 = 0`, `f_n = σ(f_{n-1})` with
//!   `σ: 0 → 01, 1 → 0`. The limit is the fixed point `0100101001001…`.
//!
//! The two limit words are letter swaps of one another.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Default cap on the length of any generated word.
pub const DEFAULT_LENGTH_CAP: usize = 10_000_000;

/// Largest `n` for which [`fib_number`] fits in a `u128`.
pub const MAX_FIB_INDEX: u32 = 185;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    ConcatRule,
    MorphismFix,
}

impl Convention {
    /// Smallest generation index whose word is a prefix of the limit word.
    pub fn first_prefix_generation(self) -> u32 {
        match self {
            Convention::ConcatRule => 1,
            Convention::MorphismFix => 2,
        }
    }

    /// Smallest valid generation index.
    pub fn first_generation(self) -> u32 {
        match self {
            Convention::ConcatRule => 0,
            Convention::MorphismFix => 1,
        }
    }

    /// Length of `f_n` in this convention, if it fits a `u128`.
    pub fn word_len(self, n: u32) -> Option<u128> {
        match self {
            Convention::ConcatRule => checked_fib_number(n),
            Convention::MorphismFix => n.checked_sub(1).and_then(checked_fib_number),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::ConcatRule => "concat",
            Convention::MorphismFix => "morphism",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "concat" | "concat-rule" => Ok(Convention::ConcatRule),
            "morphism" | "morphism-fix" => Ok(Convention::MorphismFix),
            other => Err(format!(
                "unknown convention {other:?} (expected \"concat\" or \"morphism\")"
            )),
        }
    }
}

/// The substitution `σ: 0 → 01, 1 → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismRule {
    pub image_of_zero: Word,
    pub image_of_one: Word,
}

impl Default for MorphismRule {
    fn default() -> Self {
        MorphismRule {
            image_of_zero: Word::from_symbols(vec![Symbol::Zero, Symbol::One]),
            image_of_one: Word::from_symbols(vec![Symbol::Zero]),
        }
    }
}

impl MorphismRule {
    pub fn image(&self, s: Symbol) -> &Word {
        match s {
            Symbol::Zero => &self.image_of_zero,
            Symbol::One => &self.image_of_one,
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.iter()
            .flat_map(|&s| self.image(s).iter().copied())
            .collect()
    }
}

/// `|f_n|` with `F_0 = F_1 = 1`, `F_n = F_{n-1} + F_{n-2}`.
///
/// Panics for `n > MAX_FIB_INDEX`.
pub fn fib_number(n: u32) -> u128 {
    checked_fib_number(n).unwrap_or_else(|| panic!("fib_number({n}) overflows u128"))
}

pub fn checked_fib_number(n: u32) -> Option<u128> {
    let (mut prev, mut cur) = (1u128, 1u128);
    for _ in 1..n {
        let next = prev.checked_add(cur)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

/// Word generator with a cap on output length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    cap: usize,
}

impl Default for Generator {
    fn default() -> Self {
        Generator {
            cap: DEFAULT_LENGTH_CAP,
        }
    }
}

impl Generator {
    pub fn with_cap(cap: usize) -> Self {
        Generator { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_len(&self, len: Option<u128>) -> Result<()> {
        match len {
            Some(l) if l <= self.cap as u128 => Ok(()),
            Some(l) => Err(Error::LengthCap {
                requested: l,
                cap: self.cap,
            }),
            None => Err(Error::LengthCap {
                requested: u128::MAX,
                cap: self.cap,
            }),
        }
    }

    /// `f_n` under the concatenation rule.
    pub fn concat(&self, n: u32) -> Result<Word> {
        self.check_len(checked_fib_number(n))?;
        let mut older = Word::from_symbols(vec![Symbol::Zero]);
        if n == 0 {
            return Ok(older);
        }
        let mut newer = Word::from_symbols(vec![Symbol::One]);
        for _ in 1..n {
            let next = newer.concat(&older);
            older = std::mem::replace(&mut newer, next);
        }
        Ok(newer)
    }

    /// `f_n` under the morphism convention (`n ≥ 1`).
    pub fn morphism(&self, n: u32) -> Result<Word> {
        if n == 0 {
            return Err(Error::Index {
                index: n,
                reason: "the morphism convention starts at f_1",
            });
        }
        self.check_len(Convention::MorphismFix.word_len(n))?;
        let sigma = MorphismRule::default();
        let mut w = Word::from_symbols(vec![Symbol::One]);
        for _ in 1..n {
            w = sigma.apply(&w);
        }
        Ok(w)
    }

    pub fn word(&self, n: u32, conv: Convention) -> Result<Word> {
        match conv {
            Convention::ConcatRule => self.concat(n),
            Convention::MorphismFix => self.morphism(n),
        }
    }

    /// The first `len` symbols of the infinite word under `conv`, cut from the
    /// shortest generated word that is long enough.
    pub fn prefix(&self, len: usize, conv: Convention) -> Result<Word> {
        if len == 0 {
            return Ok(Word::empty());
        }
        self.check_len(Some(len as u128))?;
        let mut k = conv.first_prefix_generation();
        while conv.word_len(k).expect("bounded by cap") < len as u128 {
            k += 1;
        }
        Ok(self.word(k, conv)?.prefix(len))
    }

    /// Successive words `f_k` of `conv`, from its first generation, until the
    /// next word would exceed the cap.
    pub fn generations(&self, conv: Convention) -> Generations {
        Generations {
            conv,
            cap: self.cap,
            next_index: conv.first_generation(),
            older: None,
            newer: None,
        }
    }
}

/// Iterator over `(k, f_k)`; see [`Generator::generations`].
#[derive(Clone, Debug)]
pub struct Generations {
    conv: Convention,
    cap: usize,
    next_index: u32,
    older: Option<Word>,
    newer: Option<Word>,
}

impl Iterator for Generations {
    type Item = (u32, Word);

    fn next(&mut self) -> Option<(u32, Word)> {
        let k = self.next_index;
        if self.conv.word_len(k)? > self.cap as u128 {
            return None;
        }
        let (first, second) = match self.conv {
            Convention::ConcatRule => (Symbol::Zero, Symbol::One),
            Convention::MorphismFix => (Symbol::One, Symbol::Zero),
        };
        let word = match (&self.older, &self.newer) {
            (_, None) => Word::from_symbols(vec![first]),
            (None, Some(_)) => Word::from_symbols(vec![second]),
            (Some(older), Some(newer)) => newer.concat(older),
        };
        self.older = self.newer.take();
        self.newer = Some(word.clone());
        self.next_index += 1;
        Some((k, word))
    }
}

pub fn fib_word_concat(n: u32) -> Result<Word> {
    Generator::default().concat(n)
}

pub fn fib_word_morphism(n: u32) -> Result<Word> {
    Generator::default().morphism(n)
}

pub fn fib_prefix(len: usize, conv: Convention) -> Result<Word> {
    Generator::default().prefix(len, conv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(w: Word) -> String {
        w.to_string()
    }

    #[test]
    fn fib_numbers() {
        assert_eq!(fib_number(0), 1);
        assert_eq!(fib_number(1), 1);
        assert_eq!(fib_number(5), 8);
        assert_eq!(fib_number(6), 13);
        assert_eq!(fib_number(9), 55);
        assert_eq!(fib_number(10), 89);
        assert_eq!(fib_number(90), 4_660_046_610_375_530_309);
        assert!(checked_fib_number(MAX_FIB_INDEX).is_some());
        assert!(checked_fib_number(MAX_FIB_INDEX + 1).is_none());
    }

    #[test]
    fn concat_words_listed_for_small_indices() {
        let expected = ["0", "1", "10", "101", "10110", "10110101", "1011010110110"];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(s(fib_word_concat(n as u32).unwrap()), *e);
        }
    }

    #[test]
    fn morphism_words() {
        let expected = ["1", "0", "01", "010", "01001", "01001010", "0100101001001"];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(s(fib_word_morphism(i as u32 + 1).unwrap()), *e);
        }
        assert!(matches!(fib_word_morphism(0), Err(Error::Index { .. })));
    }

    #[test]
    fn recursion_and_lengths() {
        for n in 2..=25 {
            let w = fib_word_concat(n).unwrap();
            let joined = fib_word_concat(n - 1)
                .unwrap()
                .concat(&fib_word_concat(n - 2).unwrap());
            assert_eq!(w, joined);
        }
        for n in 0..=25 {
            assert_eq!(fib_word_concat(n).unwrap().len() as u128, fib_number(n));
        }
        for n in 1..=25 {
            assert_eq!(
                fib_word_morphism(n).unwrap().len() as u128,
                fib_number(n - 1)
            );
        }
        for n in 3..=20 {
            let joined = fib_word_morphism(n - 1)
                .unwrap()
                .concat(&fib_word_morphism(n - 2).unwrap());
            assert_eq!(fib_word_morphism(n).unwrap(), joined);
        }
    }

    #[test]
    fn prefixes() {
        assert_eq!(
            s(fib_prefix(13, Convention::ConcatRule).unwrap()),
            "1011010110110"
        );
        assert_eq!(
            s(fib_prefix(34, Convention::MorphismFix).unwrap()),
            "0100101001001010010100100101001001"
        );
        assert_eq!(s(fib_prefix(0, Convention::ConcatRule).unwrap()), "");
        assert_eq!(s(fib_prefix(1, Convention::ConcatRule).unwrap()), "1");
        assert_eq!(s(fib_prefix(1, Convention::MorphismFix).unwrap()), "0");
    }

    #[test]
    fn conventions_are_letter_swaps() {
        let c = fib_prefix(8, Convention::ConcatRule).unwrap();
        assert_eq!(s(c.swap_letters()), "01001010");
        let c = fib_prefix(10_000, Convention::ConcatRule).unwrap();
        let m = fib_prefix(10_000, Convention::MorphismFix).unwrap();
        for k in [1, 2, 3, 55, 89, 1000, 9999, 10_000] {
            assert_eq!(c.prefix(k).swap_letters(), m.prefix(k));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Generator::with_cap(100);
        assert_eq!(g.concat(10).unwrap().len(), 89);
        assert!(matches!(
            g.concat(11),
            Err(Error::LengthCap {
                requested: 144,
                cap: 100
            })
        ));
        assert!(matches!(
            g.prefix(101, Convention::ConcatRule),
            Err(Error::LengthCap { .. })
        ));
        assert!(matches!(g.concat(500), Err(Error::LengthCap { .. })));
        assert!(matches!(g.morphism(12), Err(Error::LengthCap { .. })));
    }

    #[test]
    fn generations_follow_both_routes() {
        let g = Generator::with_cap(5_000);
        for conv in [Convention::ConcatRule, Convention::MorphismFix] {
            let mut count = 0;
            for (k, w) in g.generations(conv) {
                assert_eq!(w, g.word(k, conv).unwrap(), "{conv} f_{k}");
                count += 1;
            }
            assert!(count > 10);
        }
        let last = g.generations(Convention::ConcatRule).last().unwrap();
        assert_eq!(last.1.len(), 4181);
    }

    #[test]
    fn convention_parse() {
        assert_eq!("concat".parse(), Ok(Convention::ConcatRule));
        assert_eq!("morphism".parse(), Ok(Convention::MorphismFix));
        assert!("x".parse::<Convention>().is_err());
    }
}

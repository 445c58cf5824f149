//! Unique factors (contiguous subwords) of a word, grouped by length.
//!
//! [`unique_factors`] scans one finite word. [`saturated_factor_set`] keeps
//! generating longer Fibonacci words until the factor sets of two
//! consecutive generations coincide, so the result equals the factor set of
//! the infinite word up to the length bound.

pub mod automaton;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::{Convention, Generator};
use crate::word::{Symbol, Word};

/// Distinct factors of a source word, keyed by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    max_len: usize,
    by_length: BTreeMap<usize, BTreeSet<Word>>,
    source: Option<Source>,
    saturated: bool,
}

/// Which generated word a [`FactorSet`] was read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Source {
    pub convention: Convention,
    pub generation: u32,
    pub word_len: usize,
}

impl FactorSet {
    /// Builds an unsaturated set from explicit per-length sets. Every key must
    /// lie in `1..=max_len` and every word must have the length of its key.
    pub fn from_sets(max_len: usize, by_length: BTreeMap<usize, BTreeSet<Word>>) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::ZeroMaxLen);
        }
        for (&n, words) in &by_length {
            if n == 0 || n > max_len {
                return Err(Error::LengthOutOfRange { n, max_len });
            }
            if let Some(bad) = words.iter().find(|w| w.len() != n) {
                return Err(Error::LengthOutOfRange {
                    n: bad.len(),
                    max_len: n,
                });
            }
        }
        Ok(FactorSet {
            max_len,
            by_length,
            source: None,
            saturated: false,
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn by_length(&self) -> &BTreeMap<usize, BTreeSet<Word>> {
        &self.by_length
    }

    /// Factors of length `n`; empty if none were found.
    pub fn of_length(&self, n: usize) -> impl Iterator<Item = &Word> {
        self.by_length.get(&n).into_iter().flatten()
    }

    pub fn source(&self) -> Option<Source> {
        self.source
    }

    pub fn source_generation(&self) -> Option<u32> {
        self.source.map(|s| s.generation)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_empty(&self) -> bool {
        self.by_length.values().all(BTreeSet::is_empty)
    }

    /// All factors, ordered by length and then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.by_length.values().flatten()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.by_length.get(&w.len()).is_some_and(|s| s.contains(w))
    }

    pub fn total(&self) -> usize {
        self.by_length.values().map(BTreeSet::len).sum()
    }

    /// Per-length counts for `1..=max_len` (index 0 is length 1).
    pub fn counts(&self) -> Vec<usize> {
        (1..=self.max_len)
            .map(|n| self.by_length.get(&n).map_or(0, BTreeSet::len))
            .collect()
    }
}

/// How per-length extraction is scheduled. Output is identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Extraction {
    #[default]
    Sequential,
    Parallel,
}

fn factors_of_length(w: &[Symbol], n: usize) -> BTreeSet<Word> {
    let seen: HashSet<&[Symbol]> = w.windows(n).collect();
    assert!(seen.len() <= w.len() - n + 1, "window bound violated");
    seen.into_iter().map(Word::from).collect()
}

fn extract(w: &Word, max_len: usize, mode: Extraction) -> Result<FactorSet> {
    if max_len == 0 {
        return Err(Error::ZeroMaxLen);
    }
    let top = max_len.min(w.len());
    let by_length = match mode {
        Extraction::Sequential => (1..=top).map(|n| (n, factors_of_length(w, n))).collect(),
        Extraction::Parallel => (1..=top)
            .into_par_iter()
            .map(|n| (n, factors_of_length(w, n)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect(),
    };
    Ok(FactorSet {
        max_len,
        by_length,
        source: None,
        saturated: false,
    })
}

/// Distinct factors of `w` of every length `1..=min(max_len, |w|)`.
pub fn unique_factors(w: &Word, max_len: usize) -> Result<FactorSet> {
    extract(w, max_len, Extraction::Sequential)
}

pub fn unique_factors_with(w: &Word, max_len: usize, mode: Extraction) -> Result<FactorSet> {
    extract(w, max_len, mode)
}

/// Factor set of the infinite word under `conv`, up to `max_len`.
pub fn saturated_factor_set(max_len: usize, conv: Convention) -> Result<FactorSet> {
    saturate(max_len, conv, &Generator::default(), Extraction::Sequential)
}

/// Scans `f_k` for increasing `k` until `f_k` and `f_{k+1}` yield identical
/// factor sets, then returns the set of `f_k` with `source_generation = k`.
pub fn saturate(
    max_len: usize,
    conv: Convention,
    generator: &Generator,
    mode: Extraction,
) -> Result<FactorSet> {
    if max_len == 0 {
        return Err(Error::ZeroMaxLen);
    }
    let mut previous: Option<FactorSet> = None;
    for (k, w) in generator.generations(conv) {
        let mut current = extract(&w, max_len, mode)?;
        current.source = Some(Source {
            convention: conv,
            generation: k,
            word_len: w.len(),
        });
        if let Some(mut prev) = previous.take() {
            if prev.by_length == current.by_length {
                log::debug!("factor set up to length {max_len} stable from f_{}", k - 1);
                prev.saturated = true;
                return Ok(prev);
            }
        }
        previous = Some(current);
    }
    Err(Error::SaturationCap {
        cap: generator.cap(),
    })
}

/// Number of distinct factors of length `n`.
pub fn factor_complexity(fs: &FactorSet, n: usize) -> Result<usize> {
    if n == 0 || n > fs.max_len {
        return Err(Error::LengthOutOfRange {
            n,
            max_len: fs.max_len,
        });
    }
    Ok(fs.by_length.get(&n).map_or(0, BTreeSet::len))
}

/// Two equal-length factors whose counts of `letter` differ by two or more.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceWitness {
    pub u: Word,
    pub v: Word,
    pub letter: Symbol,
    pub count_u: usize,
    pub count_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    Balanced,
    Unbalanced(BalanceWitness),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced)
    }
}

/// Checks that, within each length, the number of `1`s varies by at most one.
/// On failure the witness pairs the lexicographically first word of minimal
/// count with the first word of maximal count at the shortest failing length.
pub fn is_balanced(fs: &FactorSet) -> Balance {
    for words in fs.by_length.values() {
        let counted = words.iter().map(|w| (w.count(Symbol::One), w));
        let Some(min) = counted.clone().min_by_key(|&(c, _)| c) else {
            continue;
        };
        let top = counted.clone().map(|(c, _)| c).max().unwrap();
        let max = counted.into_iter().find(|&(c, _)| c == top).unwrap();
        if max.0 - min.0 >= 2 {
            return Balance::Unbalanced(BalanceWitness {
                u: min.1.clone(),
                v: max.1.clone(),
                letter: Symbol::One,
                count_u: min.0,
                count_v: max.0,
            });
        }
    }
    Balance::Balanced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{fib_word_concat, Generator};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn unique_factors_examples() {
        let fs = unique_factors(&w("10110101"), 3).unwrap();
        assert_eq!(fs.by_length()[&3], set(&["101", "011", "110", "010"]));
        assert_eq!(factor_complexity(&fs, 3).unwrap(), 4);

        let fs = unique_factors(&w("0"), 1).unwrap();
        assert_eq!(fs.by_length()[&1], set(&["0"]));

        let fs = unique_factors(&w("10110101"), 1).unwrap();
        assert_eq!(fs.by_length()[&1], set(&["0", "1"]));
    }

    #[test]
    fn empty_word_gives_empty_set() {
        let fs = unique_factors(&Word::empty(), 5).unwrap();
        assert!(fs.is_empty());
        assert_eq!(fs.total(), 0);
        assert!(is_balanced(&fs).is_balanced());
    }

    #[test]
    fn lengths_beyond_word_are_absent() {
        let fs = unique_factors(&w("101"), 5).unwrap();
        assert_eq!(fs.counts(), vec![2, 2, 1, 0, 0]);
        assert_eq!(factor_complexity(&fs, 5).unwrap(), 0);
        assert!(factor_complexity(&fs, 6).is_err());
        assert!(factor_complexity(&fs, 0).is_err());
    }

    #[test]
    fn zero_max_len_rejected() {
        assert!(matches!(unique_factors(&w("1"), 0), Err(Error::ZeroMaxLen)));
        assert!(matches!(
            saturated_factor_set(0, Convention::ConcatRule),
            Err(Error::ZeroMaxLen)
        ));
    }

    #[test]
    fn saturation_small_bounds() {
        let fs = saturated_factor_set(1, Convention::ConcatRule).unwrap();
        assert_eq!(fs.counts(), vec![2]);
        assert!(fs.is_saturated());

        let fs = saturated_factor_set(5, Convention::ConcatRule).unwrap();
        assert_eq!(fs.counts(), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn saturation_reaches_464_at_generation_ten() {
        let fs = saturated_factor_set(29, Convention::ConcatRule).unwrap();
        assert_eq!(fs.total(), 464);
        assert_eq!(fs.source_generation(), Some(10));
        assert_eq!(fs.source().unwrap().word_len, 89);
        for n in 1..=29 {
            assert_eq!(factor_complexity(&fs, n).unwrap(), n + 1);
        }
        // every stored word occurs in the scanned word
        let src = fib_word_concat(10).unwrap().to_string();
        assert!(fs.iter().all(|f| src.contains(&f.to_string())));
        // two generations later the sets are unchanged
        let later = unique_factors(&fib_word_concat(12).unwrap(), 29).unwrap();
        assert_eq!(later.by_length(), fs.by_length());
    }

    #[test]
    fn length_55_prefix_is_insufficient() {
        let fs = unique_factors(&fib_word_concat(9).unwrap(), 29).unwrap();
        assert_eq!(fs.total(), 436);
        // 27 windows of length 29, only 23 distinct
        assert_eq!(factor_complexity(&fs, 29).unwrap(), 23);
    }

    #[test]
    fn saturation_fails_under_tight_cap() {
        let g = Generator::with_cap(50);
        assert!(matches!(
            saturate(29, Convention::ConcatRule, &g, Extraction::Sequential),
            Err(Error::SaturationCap { cap: 50 })
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let word = fib_word_concat(15).unwrap();
        let a = unique_factors_with(&word, 40, Extraction::Sequential).unwrap();
        let b = unique_factors_with(&word, 40, Extraction::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn automaton_agrees_with_reference() {
        for k in 0..=14 {
            let word = fib_word_concat(k).unwrap();
            let reference = unique_factors(&word, 60).unwrap().counts();
            let fast = automaton::SuffixAutomaton::new(&word).counts_by_length(60);
            assert_eq!(&fast[1..], &reference[..], "f_{k}");
        }
    }

    #[test]
    fn balance_examples() {
        let fs = saturated_factor_set(29, Convention::ConcatRule).unwrap();
        assert_eq!(is_balanced(&fs), Balance::Balanced);
        let fs = saturated_factor_set(29, Convention::MorphismFix).unwrap();
        assert_eq!(is_balanced(&fs), Balance::Balanced);

        let adhoc = FactorSet::from_sets(2, BTreeMap::from([(2, set(&["00", "11"]))])).unwrap();
        assert_eq!(
            is_balanced(&adhoc),
            Balance::Unbalanced(BalanceWitness {
                u: w("00"),
                v: w("11"),
                letter: Symbol::One,
                count_u: 0,
                count_v: 2,
            })
        );

        let single = FactorSet::from_sets(1, BTreeMap::from([(1, set(&["0"]))])).unwrap();
        assert!(is_balanced(&single).is_balanced());
    }

    #[test]
    fn from_sets_validates() {
        assert!(FactorSet::from_sets(2, BTreeMap::from([(3, set(&["000"]))])).is_err());
        assert!(FactorSet::from_sets(3, BTreeMap::from([(2, set(&["000"]))])).is_err());
        assert!(FactorSet::from_sets(0, BTreeMap::new()).is_err());
    }
}

//! Reversal, palindrome tests and the per-length palindromic census.

pub mod eertree;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::factors::FactorSet;
use crate::word::Word;

pub fn reverse(w: &Word) -> Word {
    w.reverse()
}

/// The empty word counts as a palindrome.
pub fn is_palindrome(w: &Word) -> bool {
    w.is_palindrome()
}

/// Distinct palindromic factors per length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeCensus {
    /// Sorted palindromes for each length `1..=max_len`; empty lists included.
    pub by_length: BTreeMap<usize, Vec<Word>>,
    /// False when built from an unsaturated factor set.
    pub from_saturated: bool,
}

impl PalindromeCensus {
    pub fn count(&self, n: usize) -> usize {
        self.by_length.get(&n).map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.by_length.values().map(Vec::len).sum()
    }

    /// Tab-separated `length  count` rows with a header line. With
    /// `with_words`, a third column lists the palindromes comma-separated.
    pub fn to_table(&self, with_words: bool) -> String {
        let mut out = String::from(if with_words {
            "length\tcount\tpalindromes\n"
        } else {
            "length\tcount\n"
        });
        for (n, words) in &self.by_length {
            write!(out, "{n}\t{}", words.len()).unwrap();
            if with_words {
                let joined: Vec<String> = words.iter().map(Word::to_string).collect();
                write!(out, "\t{}", joined.join(",")).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn palindrome_census(fs: &FactorSet) -> PalindromeCensus {
    if !fs.is_saturated() {
        log::warn!("palindrome census over an unsaturated factor set");
    }
    let by_length = (1..=fs.max_len())
        .map(|n| {
            let pals = fs
                .of_length(n)
                .filter(|w| w.is_palindrome())
                .cloned()
                .collect();
            (n, pals)
        })
        .collect();
    PalindromeCensus {
        by_length,
        from_saturated: fs.is_saturated(),
    }
}

/// Census computed with an eertree over `word` instead of filtering factors.
pub fn palindrome_census_eertree(word: &Word, max_len: usize) -> PalindromeCensus {
    let mut found = eertree::Eertree::new(word).by_length(max_len);
    let by_length = (1..=max_len)
        .map(|n| {
            (
                n,
                found
                    .remove(&n)
                    .map(|s| s.into_iter().collect())
                    .unwrap_or_default(),
            )
        })
        .collect();
    PalindromeCensus {
        by_length,
        from_saturated: false,
    }
}

/// Two palindromes at odd lengths, one at even lengths.
pub fn expected_palindromic_complexity(n: usize) -> usize {
    assert!(n >= 1);
    if n % 2 == 1 {
        2
    } else {
        1
    }
}

/// Every `L ≥ 1` such that the length-`L` prefix of `w` is a palindrome.
pub fn palindromic_prefix_lengths(w: &Word) -> Vec<usize> {
    (1..=w.len())
        .filter(|&l| crate::word::is_palindrome_slice(&w[..l]))
        .collect()
}

//! Exact letter densities.
//!
//! A density is the count of a letter over the word length, kept as an exact
//! ratio. Decimals appear only when rendering (4 places, round half to even).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::golden;
use crate::report::AnalysisRecord;
use crate::word::{Symbol, Word};

/// `count / length` for one letter in one word; `length ≥ 1`.
#[derive(Clone, Copy, Debug)]
pub struct Density {
    count: u64,
    length: u64,
}

impl Density {
    pub fn new(count: u64, length: u64) -> Result<Self> {
        if length == 0 {
            return Err(Error::EmptyWord);
        }
        assert!(count <= length, "count {count} exceeds length {length}");
        Ok(Density { count, length })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.count.into(), self.length.into())
    }

    pub fn render(&self) -> String {
        render_decimal(&self.ratio(), 4)
    }

    /// The complementary density of the other letter.
    pub fn complement(&self) -> Density {
        Density {
            count: self.length - self.count,
            length: self.length,
        }
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.count) * u128::from(other.length);
        let rhs = u128::from(other.count) * u128::from(self.length);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders `r` with `places` decimals, rounding half to even.
pub fn render_decimal(r: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let abs = r.abs();
    let scaled = abs.numer() * &scale;
    let (mut q, rem) = scaled.div_rem(abs.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(abs.denom()) {
        Ordering::Greater => q += 1,
        Ordering::Equal if q.is_odd() => q += 1,
        _ => {}
    }
    let (int, frac) = q.div_rem(&scale);
    let sign = if r.is_negative() && !q.is_zero() {
        "-"
    } else {
        ""
    };
    let frac: BigUint = frac.magnitude().clone();
    format!("{sign}{int}.{frac:0>width$}", width = places as usize)
}

/// Occurrences of `letter` in `w` over `|w|`.
pub fn density(w: &Word, letter: Symbol) -> Result<Density> {
    Density::new(w.count(letter) as u64, w.len() as u64)
}

/// Differences `D(c, w) − D(c, reverse(w))` for `c = 0, 1`.
pub fn density_delta(w: &Word) -> Result<(BigRational, BigRational)> {
    let rev = w.reverse();
    let d = |c| -> Result<BigRational> { Ok(density(w, c)?.ratio() - density(&rev, c)?.ratio()) };
    Ok((d(Symbol::Zero)?, d(Symbol::One)?))
}

/// Which records enter an average.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    #[default]
    All,
    Palindromic,
    NonPalindromic,
}

impl Selection {
    pub fn admits(self, record: &AnalysisRecord) -> bool {
        match self {
            Selection::All => true,
            Selection::Palindromic => record.is_palindrome,
            Selection::NonPalindromic => !record.is_palindrome,
        }
    }
}

/// How records are weighted in an average.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Averaging {
    /// Each record counts once: `Σ D / N`.
    #[default]
    PerRecord,
    /// Pooled letter count over pooled length: `Σ count / Σ |w|`.
    LengthWeighted,
}

/// Per-record mean density of `letter` over the selected records.
pub fn average_density(
    records: &[AnalysisRecord],
    letter: Symbol,
    selection: Selection,
) -> Result<BigRational> {
    average_density_with(records, letter, selection, Averaging::PerRecord)
}

pub fn average_density_with(
    records: &[AnalysisRecord],
    letter: Symbol,
    selection: Selection,
    averaging: Averaging,
) -> Result<BigRational> {
    let picked: Vec<&AnalysisRecord> = records.iter().filter(|r| selection.admits(r)).collect();
    if picked.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(match averaging {
        Averaging::PerRecord => {
            let sum: BigRational = picked.iter().map(|r| r.density(letter).ratio()).sum();
            sum / BigInt::from(picked.len())
        }
        Averaging::LengthWeighted => {
            let count: u64 = picked.iter().map(|r| r.density(letter).count()).sum();
            let length: u64 = picked.iter().map(|r| r.length as u64).sum();
            BigRational::new(count.into(), length.into())
        }
    })
}

/// Density spread over all factors of one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthProfile {
    pub length: usize,
    pub factors: usize,
    pub min0: Density,
    pub max0: Density,
    pub mean0: BigRational,
    pub min1: Density,
    pub max1: Density,
    pub mean1: BigRational,
}

/// One profile per length that has at least one factor.
pub fn length_profiles(fs: &FactorSet) -> Vec<LengthProfile> {
    fs.by_length()
        .iter()
        .filter(|(_, words)| !words.is_empty())
        .map(|(&n, words)| {
            let zeros: Vec<Density> = words
                .iter()
                .map(|w| density(w, Symbol::Zero).expect("factors are nonempty"))
                .collect();
            let ones: Vec<Density> = zeros.iter().map(Density::complement).collect();
            let mean = |ds: &[Density]| {
                ds.iter().map(Density::ratio).sum::<BigRational>() / BigInt::from(ds.len())
            };
            LengthProfile {
                length: n,
                factors: words.len(),
                min0: *zeros.iter().min().unwrap(),
                max0: *zeros.iter().max().unwrap(),
                mean0: mean(&zeros),
                min1: *ones.iter().min().unwrap(),
                max1: *ones.iter().max().unwrap(),
                mean1: mean(&ones),
            }
        })
        .collect()
}

/// A factor whose count of `1`s is not within distance 1 of `|w|(φ−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceViolation {
    pub word: Word,
    pub ones: u64,
    pub allowed: (u64, u64),
}

impl fmt::Display for ConvergenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} has {} ones; length {} admits only {} or {}",
            self.word,
            self.ones,
            self.word.len(),
            self.allowed.0,
            self.allowed.1
        )
    }
}

/// Checks `|#1(w) − |w|(φ−1)| < 1` exactly for one word.
pub fn check_golden_band(w: &Word) -> Result<(), ConvergenceViolation> {
    let len = w.len() as u64;
    let ones = w.count(Symbol::One) as u64;
    let allowed = golden::ones_band(len);
    if ones == allowed.0 || ones == allowed.1 {
        Ok(())
    } else {
        Err(ConvergenceViolation {
            word: w.clone(),
            ones,
            allowed,
        })
    }
}

/// Runs [`check_golden_band`] over every factor, stopping at the first failure.
pub fn convergence_check(fs: &FactorSet) -> Result<(), ConvergenceViolation> {
    if !fs.is_saturated() {
        log::warn!("convergence check over an unsaturated factor set");
    }
    fs.iter().try_for_each(check_golden_band)
}

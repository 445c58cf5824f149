//! End-to-end invariant suite behind `fibword verify`.
//!
//! Every check is deterministic. Properties over arbitrary words are checked
//! exhaustively over all binary words up to [`EXHAUSTIVE_WORD_LEN`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::density::{self, convergence_check, length_profiles};
use crate::error::Result;
use crate::factors::{self, automaton::SuffixAutomaton, Extraction, FactorSet};
use crate::generate::{fib_number, Convention, Generator};
use crate::golden::{self, beatty_symbol, floor_n_phi};
use crate::palindromes::{
    expected_palindromic_complexity, palindrome_census, palindrome_census_eertree,
    palindromic_prefix_lengths,
};
use crate::report::{self, build_analysis_records, emit_plot_points, summary, Figure, JsonRow};
use crate::word::{Symbol, Word};

pub const EXHAUSTIVE_WORD_LEN: u32 = 12;
pub const ORACLE_PREFIX_LEN: usize = 100_000;
pub const DUALITY_PREFIX_LEN: usize = 10_000;
pub const FLOOR_PHI_RANGE: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_len: usize,
    pub generator: Generator,
    pub extraction: Extraction,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_len: 29,
            generator: Generator::default(),
            extraction: Extraction::Sequential,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub max_len: usize,
    pub checks: Vec<CheckResult>,
    pub notices: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn check(&mut self, name: &'static str, outcome: Result<(), String>) {
        log::info!("{name}: {}", if outcome.is_ok() { "ok" } else { "FAILED" });
        self.checks.push(CheckResult {
            name,
            passed: outcome.is_ok(),
            violation: outcome.err(),
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_words(max_len: u32) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(|len| {
        (0..1u64 << len).map(move |bits| {
            (0..len)
                .map(|i| Symbol::from_bit((bits >> i) & 1).unwrap())
                .collect()
        })
    })
}

/// Runs the whole suite. Only generation failures (length cap, saturation)
/// surface as errors; everything else is reported per check.
pub fn run_suite(config: &VerifyConfig) -> Result<VerifyReport> {
    let gen = &config.generator;
    let max_len = config.max_len;
    let mut suite = Suite { checks: Vec::new() };

    // word generation
    suite.check("concat_recursion", {
        (2..=25)
            .try_for_each(|n| {
                let joined = gen.concat(n - 1)?.concat(&gen.concat(n - 2)?);
                ensure(gen.concat(n)? == joined, || {
                    format!("f_{n} != f_{{n-1}} f_{{n-2}}")
                })
                .map_err(Into::into)
            })
            .map_err(|e: Box<dyn std::error::Error>| e.to_string())
    });
    suite.check("word_lengths", {
        let mut out = Ok(());
        for n in 0..=25 {
            if gen.concat(n)?.len() as u128 != fib_number(n) {
                out = Err(format!("|f_{n}| != F_{n} (concat)"));
            }
            if n >= 1 && gen.morphism(n)?.len() as u128 != fib_number(n - 1) {
                out = Err(format!("|f_{n}| != F_{} (morphism)", n - 1));
            }
        }
        out
    });
    let concat_prefix = gen.prefix(ORACLE_PREFIX_LEN, Convention::ConcatRule)?;
    suite.check("beatty_oracle", {
        let mismatch = concat_prefix
            .iter()
            .enumerate()
            .find(|&(i, &s)| beatty_symbol(i as u64 + 1) != s);
        ensure(mismatch.is_none(), || {
            format!("first mismatch at position {}", mismatch.unwrap().0 + 1)
        })
    });
    suite.check("convention_duality", {
        let morph = gen.prefix(DUALITY_PREFIX_LEN, Convention::MorphismFix)?;
        let swapped = concat_prefix.prefix(DUALITY_PREFIX_LEN).swap_letters();
        let first = swapped.iter().zip(morph.iter()).position(|(a, b)| a != b);
        let mut out = ensure(first.is_none() && morph.len() == DUALITY_PREFIX_LEN, || {
            format!(
                "prefixes diverge at position {}",
                first.map_or(0, |p| p + 1)
            )
        });
        // independently generated short prefixes
        for k in (1..=200).chain([987, 1597, DUALITY_PREFIX_LEN]) {
            let c = gen.prefix(k, Convention::ConcatRule)?;
            let m = gen.prefix(k, Convention::MorphismFix)?;
            if c.swap_letters() != m {
                out = Err(format!("swap(prefix {k}) differs"));
            }
        }
        out
    });
    suite.check("floor_n_phi_steps", {
        let mut prev = floor_n_phi(0);
        let mut out = Ok(());
        for n in 1..=FLOOR_PHI_RANGE + 1 {
            let cur = floor_n_phi(n);
            if !(1..=2).contains(&(cur - prev)) {
                out = Err(format!("step {} at n = {n}", cur - prev));
                break;
            }
            prev = cur;
        }
        out
    });
    suite.check("word_properties_exhaustive", {
        all_words(EXHAUSTIVE_WORD_LEN).try_for_each(|w| {
            let rev = w.reverse();
            ensure(w.swap_letters().swap_letters() == w, || {
                format!("swap involution: {w}")
            })?;
            ensure(rev.reverse() == w, || format!("reverse involution: {w}"))?;
            ensure(
                rev.count(Symbol::Zero) == w.count(Symbol::Zero)
                    && rev.count(Symbol::One) == w.count(Symbol::One),
                || format!("reversal changed letter counts: {w}"),
            )?;
            ensure(w.is_palindrome() == (w == rev), || {
                format!("palindrome test: {w}")
            })?;
            if !w.is_empty() {
                let d0 = density::density(&w, Symbol::Zero).unwrap().ratio();
                let d1 = density::density(&w, Symbol::One).unwrap().ratio();
                ensure(&d0 + &d1 == BigRational::one(), || {
                    format!("D0 + D1 != 1: {w}")
                })?;
                let (a, b) = density::density_delta(&w).unwrap();
                ensure(a.is_zero() && b.is_zero(), || format!("nonzero delta: {w}"))?;
            }
            Ok(())
        })
    });

    // factors
    let fs = factors::saturate(max_len, Convention::ConcatRule, gen, config.extraction)?;
    let source = fs.source().expect("saturated sets record their source");
    suite.check("factor_complexity", {
        let counts = fs.counts();
        let bad = counts.iter().enumerate().find(|&(i, &c)| c != i + 2);
        ensure(bad.is_none(), || {
            let (i, c) = bad.unwrap();
            format!("length {} has {c} factors, expected {}", i + 1, i + 2)
        })
    });
    suite.check("factor_total", {
        let expected = max_len * (max_len + 3) / 2;
        ensure(fs.total() == expected, || {
            format!("{} factors, expected {expected}", fs.total())
        })
    });
    suite.check("saturation_soundness", {
        let later = gen.concat(source.generation + 2)?;
        let later = factors::unique_factors(&later, max_len)?;
        ensure(later.by_length() == fs.by_length(), || {
            format!("f_{} adds factors", source.generation + 2)
        })
    });
    suite.check("factor_containment", {
        let word = gen.concat(source.generation)?.to_string();
        let missing = fs.iter().find(|f| !word.contains(&f.to_string()));
        ensure(missing.is_none(), || {
            format!("{} not in source", missing.unwrap())
        })
    });
    suite.check("automaton_agreement", {
        let word = gen.concat(source.generation)?;
        let fast = SuffixAutomaton::new(&word).counts_by_length(max_len);
        ensure(fast[1..] == fs.counts()[..], || {
            "suffix automaton counts differ".into()
        })
    });
    let morph_fs = factors::saturate(max_len, Convention::MorphismFix, gen, config.extraction)?;
    suite.check("balanced", {
        let a = factors::is_balanced(&fs);
        let b = factors::is_balanced(&morph_fs);
        match (a, b) {
            (factors::Balance::Balanced, factors::Balance::Balanced) => Ok(()),
            (factors::Balance::Unbalanced(w), _) | (_, factors::Balance::Unbalanced(w)) => Err(
                format!("{} vs {}: {} vs {}", w.u, w.v, w.count_u, w.count_v),
            ),
        }
    });
    suite.check("convention_factor_duality", {
        let swapped: BTreeSet<Word> = fs.iter().map(Word::swap_letters).collect();
        let other: BTreeSet<Word> = morph_fs.iter().cloned().collect();
        ensure(swapped == other, || "swapped factor sets differ".into())
    });
    suite.check(
        "golden_band",
        convergence_check(&fs).map_err(|v| v.to_string()),
    );

    // palindromes
    let census = palindrome_census(&fs);
    suite.check("palindrome_census_law", {
        let bad = (1..=max_len).find(|&n| census.count(n) != expected_palindromic_complexity(n));
        ensure(bad.is_none(), || {
            let n = bad.unwrap();
            format!("length {n}: {} palindromes", census.count(n))
        })
    });
    suite.check("palindrome_membership", {
        let bad = census
            .by_length
            .values()
            .flatten()
            .find(|p| !p.is_palindrome() || !fs.contains(p));
        ensure(bad.is_none(), || {
            format!("{} is not a palindromic factor", bad.unwrap())
        })
    });
    suite.check("eertree_agreement", {
        let word = gen.concat(source.generation)?;
        let tree = palindrome_census_eertree(&word, max_len);
        ensure(tree.by_length == census.by_length, || {
            "eertree census differs".into()
        })
    });
    suite.check("reversal_closure", {
        let bad = fs.iter().find(|f| !fs.contains(&f.reverse()));
        ensure(bad.is_none(), || {
            format!("reverse of {} missing", bad.unwrap())
        })
    });

    // densities and records
    let records = build_analysis_records(&fs);
    suite.check("density_reversal_invariance", {
        let bad = records
            .iter()
            .find(|r| !r.delta0.is_zero() || !r.delta1.is_zero() || r.density0 != r.pal_density0);
        ensure(bad.is_none(), || {
            format!("{} changes density", bad.unwrap().subword)
        })
    });
    suite.check("density_complement", {
        let bad = records
            .iter()
            .find(|r| r.density0.ratio() + r.density1.ratio() != BigRational::one());
        ensure(bad.is_none(), || {
            format!("{}: D0 + D1 != 1", bad.unwrap().subword)
        })
    });
    suite.check("length_profiles", {
        length_profiles(&fs).iter().try_for_each(|p| {
            let bound = BigRational::new(BigInt::one(), BigInt::from(p.length));
            ensure(
                p.min0.ratio() <= p.mean0
                    && p.mean0 <= p.max0.ratio()
                    && p.min1.ratio() <= p.mean1
                    && p.mean1 <= p.max1.ratio(),
                || format!("length {}: mean outside [min, max]", p.length),
            )?;
            ensure(&p.mean0 + &p.mean1 == BigRational::one(), || {
                format!("length {}: means do not sum to 1", p.length)
            })?;
            ensure(golden::within_of_inv_phi(&p.mean1, &bound), || {
                format!("length {}: mean D1 farther than 1/n from phi - 1", p.length)
            })
        })
    });
    suite.check("plot_diagonal", {
        [Figure::Fig1, Figure::Fig2].iter().try_for_each(|&fig| {
            let table = emit_plot_points(&records, fig);
            ensure(table.rows.iter().all(|p| p[0] == p[1]), || {
                format!("{fig:?} off diagonal")
            })
        })
    });

    // artifacts
    suite.check(
        "json_round_trip",
        (|| -> Result<(), String> {
            let mut buf = Vec::new();
            report::write_json_to(&records, &mut buf).map_err(|e| e.to_string())?;
            let rows = report::read_json_from(buf.as_slice()).map_err(|e| e.to_string())?;
            let back: std::result::Result<Vec<_>, _> =
                rows.iter().map(JsonRow::to_record).collect();
            ensure(back.map_err(|e| e.to_string())? == records, || {
                "records differ".into()
            })
        })(),
    );
    suite.check(
        "csv_json_agreement",
        (|| -> Result<(), String> {
            let mut csv = Vec::new();
            report::write_csv_to(&records, &mut csv).map_err(|e| e.to_string())?;
            let rows = report::read_csv_from(csv.as_slice()).map_err(|e| e.to_string())?;
            let json: Vec<JsonRow> = records.iter().map(JsonRow::from).collect();
            let csv_json: Vec<JsonRow> = rows.iter().map(|r| r.json_part()).collect();
            ensure(csv_json == json, || "CSV and JSON rows differ".into())?;
            ensure(
                rows.iter()
                    .all(|r| r.delta_0 == "0.0000" && r.delta_1 == "0.0000"),
                || "nonzero delta column".into(),
            )
        })(),
    );
    let s = summary(&records)?;
    suite.check(
        "summary_consistency",
        (|| {
            ensure(s.total_records == fs.total(), || "total mismatch".into())?;
            ensure(s.palindromic_count == census.total(), || {
                "palindrome count mismatch".into()
            })?;
            let groups = [
                Some(&s.all),
                s.palindromic.as_ref(),
                s.non_palindromic.as_ref(),
            ];
            groups.into_iter().flatten().try_for_each(|g| {
                ensure(&g.avg0 + &g.avg1 == BigRational::one(), || {
                    "averages do not sum to 1".into()
                })
            })
        })(),
    );

    let notices = notices(gen, max_len, &fs)?;
    let ok = suite.checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        ok,
        max_len,
        checks: suite.checks,
        notices,
    })
}

fn notices(gen: &Generator, max_len: usize, fs: &FactorSet) -> Result<Vec<String>> {
    let source = fs.source().unwrap();
    let mut out = vec![format!(
        "saturation: factors up to length {max_len} are complete from f_{} (length {}) onward",
        source.generation, source.word_len
    )];
    // The 55-symbol word the original experiment claimed was sufficient.
    let short = factors::unique_factors(&gen.concat(9)?, max_len)?;
    if short.by_length() != fs.by_length() {
        out.push(format!(
            "erratum: a length-55 word (f_9) yields {} of the {} factors up to length {max_len}; \
             a length-{} word (f_{}) is the shortest sufficient generation",
            short.total(),
            fs.total(),
            source.word_len,
            source.generation
        ));
    }
    let prefix = gen.prefix(34, Convention::ConcatRule)?;
    out.push(format!(
        "palindromic prefix lengths of the first 34 symbols: {:?} (8 and 21 are not among them)",
        palindromic_prefix_lengths(&prefix)
    ));
    out.push(format!(
        "morphism listing: f_7 = {} (13 symbols); the 14-symbol listing 01001011001001 is a typo",
        gen.morphism(7)?
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run_suite(&VerifyConfig::default()).unwrap();
        let failed: Vec<_> = report.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(report.ok);
        assert!(report.notices.iter().any(|n| n.contains("436 of the 464")));
        assert!(report
            .notices
            .iter()
            .any(|n| n.contains("f_10 (length 89)")));
    }

    #[test]
    fn exhaustive_word_enumeration_covers_every_word() {
        assert_eq!(all_words(3).count(), 1 + 2 + 4 + 8);
        let distinct: BTreeSet<Word> = all_words(4).collect();
        assert_eq!(distinct.len(), 31);
    }
}

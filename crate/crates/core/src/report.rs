//! The per-factor analysis dataset and its artifacts: JSON results, CSV with
//! reversal deltas, plot-point tables and summary averages.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::density::{average_density, density, render_decimal, Density, Selection};
use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::word::{Symbol, Word};

pub const DEFAULT_JSON_NAME: &str = "fibonacci-word-analysis-results.json";
pub const DEFAULT_CSV_NAME: &str = "processed-fibonacci-analysis.csv";

/// One factor with its reversal and the densities of both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRecord {
    pub subword: Word,
    pub length: usize,
    pub density0: Density,
    pub density1: Density,
    pub palindrome: Word,
    pub is_palindrome: bool,
    pub pal_density0: Density,
    pub pal_density1: Density,
    pub delta0: BigRational,
    pub delta1: BigRational,
}

impl AnalysisRecord {
    pub fn new(subword: Word) -> Result<Self> {
        let palindrome = subword.reverse();
        let density0 = density(&subword, Symbol::Zero)?;
        let density1 = density(&subword, Symbol::One)?;
        let pal_density0 = density(&palindrome, Symbol::Zero)?;
        let pal_density1 = density(&palindrome, Symbol::One)?;
        Ok(AnalysisRecord {
            length: subword.len(),
            is_palindrome: subword == palindrome,
            delta0: density0.ratio() - pal_density0.ratio(),
            delta1: density1.ratio() - pal_density1.ratio(),
            subword,
            density0,
            density1,
            palindrome,
            pal_density0,
            pal_density1,
        })
    }

    pub fn density(&self, letter: Symbol) -> Density {
        match letter {
            Symbol::Zero => self.density0,
            Symbol::One => self.density1,
        }
    }

    pub fn pal_density(&self, letter: Symbol) -> Density {
        match letter {
            Symbol::Zero => self.pal_density0,
            Symbol::One => self.pal_density1,
        }
    }
}

/// One record per factor, ordered by length and then lexicographically.
pub fn build_analysis_records(fs: &FactorSet) -> Vec<AnalysisRecord> {
    fs.iter()
        .map(|w| AnalysisRecord::new(w.clone()).expect("factors are nonempty"))
        .collect()
}

/// Serialized form of a record in the JSON results file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub subword: String,
    pub length: usize,
    pub density_0: String,
    pub density_1: String,
    pub palindrome: String,
    pub is_palindrome: bool,
    pub palindrome_density_0: String,
    pub palindrome_density_1: String,
}

/// Serialized form of a record in the processed CSV file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub subword: String,
    pub length: usize,
    pub density_0: String,
    pub density_1: String,
    pub palindrome: String,
    pub is_palindrome: bool,
    pub palindrome_density_0: String,
    pub palindrome_density_1: String,
    pub delta_0: String,
    pub delta_1: String,
}

const CSV_HEADER: [&str; 10] = [
    "subword",
    "length",
    "density_0",
    "density_1",
    "palindrome",
    "is_palindrome",
    "palindrome_density_0",
    "palindrome_density_1",
    "delta_0",
    "delta_1",
];

impl From<&AnalysisRecord> for JsonRow {
    fn from(r: &AnalysisRecord) -> Self {
        JsonRow {
            subword: r.subword.to_string(),
            length: r.length,
            density_0: r.density0.render(),
            density_1: r.density1.render(),
            palindrome: r.palindrome.to_string(),
            is_palindrome: r.is_palindrome,
            palindrome_density_0: r.pal_density0.render(),
            palindrome_density_1: r.pal_density1.render(),
        }
    }
}

impl From<&AnalysisRecord> for CsvRow {
    fn from(r: &AnalysisRecord) -> Self {
        let j = JsonRow::from(r);
        CsvRow {
            subword: j.subword,
            length: j.length,
            density_0: j.density_0,
            density_1: j.density_1,
            palindrome: j.palindrome,
            is_palindrome: j.is_palindrome,
            palindrome_density_0: j.palindrome_density_0,
            palindrome_density_1: j.palindrome_density_1,
            delta_0: render_decimal(&r.delta0, 4),
            delta_1: render_decimal(&r.delta1, 4),
        }
    }
}

impl CsvRow {
    pub fn json_part(&self) -> JsonRow {
        JsonRow {
            subword: self.subword.clone(),
            length: self.length,
            density_0: self.density_0.clone(),
            density_1: self.density_1.clone(),
            palindrome: self.palindrome.clone(),
            is_palindrome: self.is_palindrome,
            palindrome_density_0: self.palindrome_density_0.clone(),
            palindrome_density_1: self.palindrome_density_1.clone(),
        }
    }
}

impl JsonRow {
    /// Rebuilds the record from its subword and checks every serialized
    /// field against the recomputed one.
    pub fn to_record(&self) -> Result<AnalysisRecord> {
        let bad = |reason: String| Error::Record {
            subword: self.subword.clone(),
            reason,
        };
        let word: Word = self
            .subword
            .parse()
            .map_err(|e: Error| bad(e.to_string()))?;
        let record = AnalysisRecord::new(word).map_err(|e| bad(e.to_string()))?;
        let expected = JsonRow::from(&record);
        if &expected != self {
            return Err(bad(format!(
                "fields disagree with recomputation: {expected:?}"
            )));
        }
        Ok(record)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Pretty-printed JSON array of [`JsonRow`]s with a trailing newline.
pub fn write_json(records: &[AnalysisRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    write_json_to(records, &mut out).map_err(|source| Error::Json {
        path: path.into(),
        source,
    })?;
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn write_json_to<W: Write>(records: &[AnalysisRecord], mut out: W) -> serde_json::Result<()> {
    let rows: Vec<JsonRow> = records.iter().map(JsonRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    out.write_all(b"\n").map_err(serde_json::Error::io)
}

pub fn read_json(path: impl AsRef<Path>) -> Result<Vec<JsonRow>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_json_from(BufReader::new(file)).map_err(|source| Error::Json {
        path: path.into(),
        source,
    })
}

pub fn read_json_from<R: Read>(input: R) -> serde_json::Result<Vec<JsonRow>> {
    serde_json::from_reader(input)
}

/// CSV with a header row and `\n` line endings; the header is written even
/// when there are no records.
pub fn write_csv(records: &[AnalysisRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    write_csv_to(records, &mut out).map_err(|source| Error::Csv {
        path: path.into(),
        source,
    })?;
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn write_csv_to<W: Write>(records: &[AnalysisRecord], out: W) -> csv::Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    wtr.write_record(CSV_HEADER)?;
    for r in records {
        wtr.serialize(CsvRow::from(r))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<CsvRow>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv_from(file).map_err(|source| Error::Csv {
        path: path.into(),
        source,
    })
}

pub fn read_csv_from<R: Read>(input: R) -> csv::Result<Vec<CsvRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Density of 0s, subword against palindrome.
    Fig1,
    /// Density of 1s, subword against palindrome.
    Fig2,
    /// Density of 0s against length, both series.
    Fig3,
    /// Density of 1s against length, both series.
    Fig4,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            other => Err(format!("unknown figure {other:?} (expected fig1..fig4)")),
        }
    }
}

/// Plot points as a small comma-separated table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl fmt::Display for PlotTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }
}

pub fn emit_plot_points(records: &[AnalysisRecord], figure: Figure) -> PlotTable {
    match figure {
        Figure::Fig1 | Figure::Fig2 => {
            let letter = if figure == Figure::Fig1 {
                Symbol::Zero
            } else {
                Symbol::One
            };
            PlotTable {
                header: vec!["x", "y"],
                rows: records
                    .iter()
                    .map(|r| vec![r.density(letter).render(), r.pal_density(letter).render()])
                    .collect(),
            }
        }
        Figure::Fig3 | Figure::Fig4 => {
            let letter = if figure == Figure::Fig3 {
                Symbol::Zero
            } else {
                Symbol::One
            };
            let series = |tag: &str, pick: &dyn Fn(&AnalysisRecord) -> Density| {
                records
                    .iter()
                    .map(|r| vec![tag.to_string(), r.length.to_string(), pick(r).render()])
                    .collect::<Vec<_>>()
            };
            let mut rows = series("subword", &|r| r.density(letter));
            rows.extend(series("palindrome", &|r| r.pal_density(letter)));
            PlotTable {
                header: vec!["series", "x", "y"],
                rows,
            }
        }
    }
}

/// Mean densities over one group of records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAverages {
    pub records: usize,
    pub avg0: BigRational,
    pub avg1: BigRational,
}

impl GroupAverages {
    fn of(records: &[AnalysisRecord], selection: Selection) -> Result<Option<Self>> {
        let n = records.iter().filter(|r| selection.admits(r)).count();
        if n == 0 {
            return Ok(None);
        }
        Ok(Some(GroupAverages {
            records: n,
            avg0: average_density(records, Symbol::Zero, selection)?,
            avg1: average_density(records, Symbol::One, selection)?,
        }))
    }

    pub fn avg0_rendered(&self) -> String {
        render_decimal(&self.avg0, 4)
    }

    pub fn avg1_rendered(&self) -> String {
        render_decimal(&self.avg1, 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummaryStats {
    pub total_records: usize,
    pub palindromic_count: usize,
    pub all: GroupAverages,
    pub palindromic: Option<GroupAverages>,
    pub non_palindromic: Option<GroupAverages>,
}

pub fn summary(records: &[AnalysisRecord]) -> Result<SummaryStats> {
    let all = GroupAverages::of(records, Selection::All)?.ok_or(Error::EmptySelection)?;
    debug_assert!(records
        .iter()
        .all(|r| r.delta0.is_zero() && r.delta1.is_zero()));
    Ok(SummaryStats {
        total_records: records.len(),
        palindromic_count: records.iter().filter(|r| r.is_palindrome).count(),
        all,
        palindromic: GroupAverages::of(records, Selection::Palindromic)?,
        non_palindromic: GroupAverages::of(records, Selection::NonPalindromic)?,
    })
}

impl fmt::Display for SummaryStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total records: {}", self.total_records)?;
        writeln!(f, "palindromic records: {}", self.palindromic_count)?;
        let groups = [
            ("all", Some(&self.all)),
            ("palindromic", self.palindromic.as_ref()),
            ("non-palindromic", self.non_palindromic.as_ref()),
        ];
        for (name, group) in groups {
            match group {
                Some(g) => {
                    writeln!(f, "average density of 0s ({name}): {}", g.avg0_rendered())?;
                    writeln!(f, "average density of 1s ({name}): {}", g.avg1_rendered())?;
                }
                None => writeln!(f, "no {name} records")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{saturated_factor_set, unique_factors};
    use crate::generate::Convention;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn saturated_records() -> Vec<AnalysisRecord> {
        build_analysis_records(&saturated_factor_set(29, Convention::ConcatRule).unwrap())
    }

    #[test]
    fn record_examples() {
        let r = AnalysisRecord::new(w("10110")).unwrap();
        assert_eq!(r.length, 5);
        assert_eq!(r.density0.ratio(), BigRational::new(2.into(), 5.into()));
        assert_eq!(r.palindrome, w("01101"));
        assert!(!r.is_palindrome);
        assert_eq!(r.pal_density0, r.density0);
        assert!(r.delta0.is_zero());

        let r = AnalysisRecord::new(w("101")).unwrap();
        assert!(r.is_palindrome);
        assert_eq!(r.palindrome, w("101"));

        assert!(AnalysisRecord::new(Word::empty()).is_err());
    }

    #[test]
    fn records_are_canonically_ordered() {
        let records = saturated_records();
        assert_eq!(records.len(), 464);
        let keys: Vec<(usize, Word)> = records
            .iter()
            .map(|r| (r.length, r.subword.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn json_single_record_and_empty() {
        let mut buf = Vec::new();
        write_json_to(&[], &mut buf).unwrap();
        assert_eq!(buf, b"[]\n");

        let mut buf = Vec::new();
        write_json_to(&[AnalysisRecord::new(w("0")).unwrap()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = r#"[
  {
    "subword": "0",
    "length": 1,
    "density_0": "1.0000",
    "density_1": "0.0000",
    "palindrome": "0",
    "is_palindrome": true,
    "palindrome_density_0": "1.0000",
    "palindrome_density_1": "0.0000"
  }
]
"#;
        assert_eq!(text, expected);
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let records = saturated_records();
        let json = dir.path().join("r.json");
        let csv = dir.path().join("r.csv");
        write_json(&records, &json).unwrap();
        write_csv(&records, &csv).unwrap();

        let rows = read_json(&json).unwrap();
        assert_eq!(rows.len(), 464);
        let back: Vec<AnalysisRecord> = rows.iter().map(|r| r.to_record().unwrap()).collect();
        assert_eq!(back, records);

        let text = std::fs::read_to_string(&csv).unwrap();
        assert_eq!(text.lines().count(), 465);
        assert!(text.starts_with(
            "subword,length,density_0,density_1,palindrome,is_palindrome,\
             palindrome_density_0,palindrome_density_1,delta_0,delta_1\n"
        ));
        let csv_rows = read_csv(&csv).unwrap();
        assert!(csv_rows
            .iter()
            .all(|r| r.delta_0 == "0.0000" && r.delta_1 == "0.0000"));
        let as_json: Vec<JsonRow> = csv_rows.iter().map(CsvRow::json_part).collect();
        assert_eq!(as_json, rows);
    }

    #[test]
    fn empty_csv_has_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        write_csv(&[], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn io_errors_carry_the_path() {
        let err = write_json(&[], "/nonexistent-dir/x.json").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.json"));
        let err = read_csv("/nonexistent-dir/x.csv").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    #[test]
    fn tampered_row_is_rejected() {
        let mut row = JsonRow::from(&AnalysisRecord::new(w("10110")).unwrap());
        row.density_0 = "0.5000".into();
        assert!(row.to_record().is_err());
        row.subword = "10x".into();
        assert!(row.to_record().is_err());
    }

    #[test]
    fn plot_points() {
        let records = saturated_records();
        for fig in [Figure::Fig1, Figure::Fig2] {
            let table = emit_plot_points(&records, fig);
            assert_eq!(table.rows.len(), 464);
            assert!(table.rows.iter().all(|p| p[0] == p[1]));
        }
        for fig in [Figure::Fig3, Figure::Fig4] {
            let table = emit_plot_points(&records, fig);
            let (subs, pals) = table.rows.split_at(464);
            assert!(subs.iter().all(|r| r[0] == "subword"));
            assert!(pals.iter().all(|r| r[0] == "palindrome"));
            for (a, b) in subs.iter().zip(pals) {
                assert_eq!(a[1..], b[1..]);
            }
        }
        let single = [AnalysisRecord::new(w("0")).unwrap()];
        assert_eq!(
            emit_plot_points(&single, Figure::Fig1).to_string(),
            "x,y\n1.0000,1.0000\n"
        );
        assert_eq!(
            emit_plot_points(&single, Figure::Fig4).to_string(),
            "series,x,y\nsubword,1,0.0000\npalindrome,1,0.0000\n"
        );
    }

    #[test]
    fn summary_reproduces_reported_averages() {
        let s = summary(&saturated_records()).unwrap();
        assert_eq!(s.total_records, 464);
        assert_eq!(s.palindromic_count, 44);
        assert_eq!(s.all.avg0_rendered(), "0.3828");
        assert_eq!(s.all.avg1_rendered(), "0.6172");
        let pal = s.palindromic.as_ref().unwrap();
        assert_eq!(pal.avg0_rendered(), "0.3840");
        assert_eq!(pal.avg1_rendered(), "0.6160");
        let non = s.non_palindromic.as_ref().unwrap();
        assert_eq!(non.avg0_rendered(), "0.3827");
        assert_eq!(non.avg1_rendered(), "0.6173");
    }

    #[test]
    fn summary_of_nothing_is_an_error() {
        assert!(matches!(summary(&[]), Err(Error::EmptySelection)));
        let fs = unique_factors(&w("01"), 2).unwrap();
        let s = summary(&build_analysis_records(&fs)).unwrap();
        assert_eq!(s.total_records, 3);
        assert_eq!(s.palindromic_count, 2);
    }
}

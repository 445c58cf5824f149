//! The `fibword` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::factors::{self, Extraction};
use crate::generate::{Convention, Generator, DEFAULT_LENGTH_CAP};
use crate::palindromes::palindrome_census;
use crate::report::{self, Figure, DEFAULT_CSV_NAME, DEFAULT_JSON_NAME};
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fibword",
    version,
    about = "Fibonacci word factors, palindromes and densities"
)]
pub struct RunConfig {
    /// Word convention: "concat" (1011…) or "morphism" (0100…).
    #[arg(long, global = true, default_value = "concat")]
    pub convention: Convention,

    /// Worker threads for factor extraction; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,

    /// Maximum length of any generated word.
    #[arg(long, global = true, default_value_t = DEFAULT_LENGTH_CAP)]
    pub cap: usize,

    /// Log progress to stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generated word f_N.
    Generate {
        #[arg(long)]
        index: u32,
    },
    /// Build the saturated factor set, write JSON and CSV, print the summary.
    Analyze {
        #[arg(long, default_value_t = 29, value_parser = max_len_parser())]
        max_len: usize,
        #[arg(long, default_value = DEFAULT_JSON_NAME)]
        json: PathBuf,
        #[arg(long, default_value = DEFAULT_CSV_NAME)]
        csv: PathBuf,
    },
    /// Print the number of palindromic factors per length.
    Census {
        #[arg(long, default_value_t = 29, value_parser = max_len_parser())]
        max_len: usize,
        /// Add a column listing the palindromes.
        #[arg(long)]
        words: bool,
    },
    /// Emit plot points for fig1..fig4.
    Plot {
        #[arg(long)]
        figure: Figure,
        #[arg(long, default_value_t = 29, value_parser = max_len_parser())]
        max_len: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every invariant check and print a JSON report.
    Verify {
        #[arg(long, default_value_t = 29, value_parser = max_len_parser())]
        max_len: usize,
    },
}

fn max_len_parser() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Index { .. } | Error::ZeroMaxLen => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Runs the CLI with process stdout/stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let level = match config.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();

    let mut buf = Vec::new();
    let mut result = if config.threads > 1 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads.into())
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&config, &mut buf)),
            Err(e) => Err(Failure::Runtime(e.to_string())),
        }
    } else {
        dispatch(&config, &mut buf)
    };
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        result = result.and(Err(e.into()));
    }
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(config: &RunConfig, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let gen = Generator::with_cap(config.cap);
    let extraction = if config.threads > 1 {
        Extraction::Parallel
    } else {
        Extraction::Sequential
    };
    let conv = config.convention;
    match &config.command {
        Command::Generate { index } => {
            writeln!(out, "{}", gen.word(*index, conv)?)?;
        }
        Command::Analyze { max_len, json, csv } => {
            let fs = factors::saturate(*max_len, conv, &gen, extraction)?;
            let records = report::build_analysis_records(&fs);
            report::write_json(&records, json)?;
            report::write_csv(&records, csv)?;
            let source = fs.source().expect("saturated");
            writeln!(out, "convention: {conv}")?;
            writeln!(out, "max length: {max_len}")?;
            writeln!(
                out,
                "source word: f_{} ({} symbols)",
                source.generation, source.word_len
            )?;
            write!(out, "{}", report::summary(&records)?)?;
            writeln!(out, "json: {}", json.display())?;
            writeln!(out, "csv: {}", csv.display())?;
        }
        Command::Census { max_len, words } => {
            let fs = factors::saturate(*max_len, conv, &gen, extraction)?;
            write!(out, "{}", palindrome_census(&fs).to_table(*words))?;
        }
        Command::Plot {
            figure,
            max_len,
            output,
        } => {
            let fs = factors::saturate(*max_len, conv, &gen, extraction)?;
            let records = report::build_analysis_records(&fs);
            let table = report::emit_plot_points(&records, *figure).to_string();
            match output {
                Some(path) => std::fs::write(path, table).map_err(|e| Error::io(path, e))?,
                None => out.write_all(table.as_bytes())?,
            }
        }
        Command::Verify { max_len } => {
            let report = verify::run_suite(&VerifyConfig {
                max_len: *max_len,
                generator: gen,
                extraction,
            })?;
            out.write_all(report.to_json().as_bytes())?;
            return Ok(if report.ok { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

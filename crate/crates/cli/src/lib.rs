//! Argument handling and the end-to-end run behind the `faultlint` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use faultlint_core::{save_store, scan, ReportFormat, RuleSet, RunConfig, ScanError};

pub const EXIT_CLEAN: u8 = 0;
pub const EXIT_FINDINGS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Scan a folder of Java sources for object-oriented fault patterns.
#[derive(Debug, Parser)]
#[command(name = "faultlint", version)]
struct Args {
    /// Folder to scan recursively for `*.java` files.
    corpus: PathBuf,

    /// Comma-separated error codes to enable, e.g. `1,3,5` (default: all).
    #[arg(long, value_parser = parse_rules, value_name = "CODES")]
    rules: Option<RuleSet>,

    /// Report format.
    #[arg(long, value_parser = parse_format, default_value = "text", value_name = "text|json")]
    format: ReportFormat,

    /// JSON file with library extends-edges, resource types and pure accessors.
    #[arg(long, value_name = "PATH")]
    seed: Option<PathBuf>,

    /// Write the result store to this path.
    #[arg(long, value_name = "PATH")]
    store: Option<PathBuf>,

    /// Exit 1 when any file needed parse recovery.
    #[arg(long)]
    strict_parse: bool,
}

fn parse_rules(s: &str) -> Result<RuleSet, String> {
    s.parse().map_err(|e: faultlint_core::detectors::RuleSetError| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|_| format!("unknown format `{s}`: expected text or json"))
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    Ok(RunConfig {
        corpus_root: args.corpus,
        seed_file: args.seed,
        enabled_rules: args.rules.unwrap_or_default(),
        output_format: args.format,
        store_output: args.store,
        strict_parse: args.strict_parse,
    })
}

/// One-line error for standard error: `faultlint: error[<kind>]: <message>`.
fn error_line(kind: &str, message: impl std::fmt::Display) -> String {
    let message = message.to_string().replace('\n', " ");
    format!("faultlint: error[{kind}]: {message}")
}

fn scan_error_kind(err: &ScanError) -> &'static str {
    match err {
        ScanError::MissingCorpus(_) => "missing-corpus",
        ScanError::NotADirectory(_) => "not-a-directory",
        ScanError::Seed(_) => "bad-seed",
    }
}

/// Runs the tool with `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(config) => config,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_CLEAN
                }
                _ => {
                    let rendered = e.render().to_string();
                    let _ = write!(err, "{rendered}");
                    // Value errors carry only a `--help` hint; usage errors always show usage.
                    if !rendered.contains("Usage:") {
                        let _ = writeln!(err, "\n{}", Args::command().render_usage());
                    }
                    EXIT_ERROR
                }
            };
        }
    };

    let outcome = match scan(&config) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "{}", error_line(scan_error_kind(&e), &e));
            return EXIT_ERROR;
        }
    };

    if let Some(path) = &config.store_output {
        if let Err(e) = save_store(&outcome.store, path) {
            let _ = writeln!(err, "{}", error_line("store-write", e));
            return EXIT_ERROR;
        }
    }

    if let Err(e) = out.write_all(&outcome.render(config.output_format)).and_then(|_| out.flush()) {
        let _ = writeln!(err, "{}", error_line("output", e));
        return EXIT_ERROR;
    }
    outcome.exit_code(config.strict_parse)
}

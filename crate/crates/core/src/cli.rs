//! Command-line front end. [`run`] returns the process exit code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::counting::{CountOptions, Method, DEFAULT_CAP};
use crate::dag_lab::{realize, standard_system, AbstractWeightedDag};
use crate::error::Error;
use crate::io::{parse_dag, parse_system, ErrorDocument, ReportDocument, SystemDocument, FORMAT_VERSION};
use crate::oracle::{exhaustive_gci, pattern_counts, PATTERN_LIMIT};
use crate::pipeline::analyze;
use crate::reduce::{is_gci, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_GCI: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Enumerate,
    Recursive,
    Auto,
}

#[derive(Parser, Debug)]
#[command(name = "binomial-gci", version, about = "Decide and count solutions of square binomial systems")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the system is a generic complete intersection.
    Gci {
        file: PathBuf,
        /// Skip the determinant of the invertible block; the caller vouches for det B != 0.
        #[arg(long)]
        assume_nonsingular: bool,
    },
    /// Full report: blocks, DAG, solution counts and zero patterns.
    Count {
        file: PathBuf,
        /// Only the totals; skips the pattern table.
        #[arg(long)]
        totals_only: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_subgraphs: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Binomial system of a DAG file: the standard system, or the realization of its weights.
    FromDag { dagfile: PathBuf },
    /// Cross-check the pipeline against brute-force enumeration (small n only).
    Oracle { file: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub version: String,
    pub command: String,
    pub n: usize,
    pub gci: bool,
    pub gci_exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "D")]
    pub distinct: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "D_bruteforce")]
    pub distinct_bruteforce: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patterns_agree: Option<bool>,
    pub agree: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::TooLarge { .. } | Error::TooManyLocalBlocks { .. } => EXIT_CAP,
        Error::Overflow(_) | Error::Contract(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    }
}

struct Io<'a> {
    format: Format,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, json: String, text: String) {
        let body = match self.format {
            Format::Json => json,
            Format::Text => text,
        };
        let _ = writeln!(self.out, "{}", body.trim_end());
    }

    fn fail(&mut self, e: &Error) -> i32 {
        let doc = ErrorDocument::new(e);
        let text = match &doc.location {
            Some(loc) => format!("error ({}) at {loc}: {}", doc.error, doc.message),
            None => format!("error ({}): {}", doc.error, doc.message),
        };
        self.emit(doc.to_json(), text.clone());
        let _ = writeln!(self.err, "{text}");
        exit_code(e)
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn verdict_code(outcome: &Outcome) -> i32 {
    match outcome {
        Outcome::Gci { .. } => EXIT_OK,
        Outcome::NotGci(_) => EXIT_NOT_GCI,
        Outcome::Unsupported(_) => EXIT_UNSUPPORTED,
    }
}

fn run_command(command: Command, io: &mut Io) -> Result<i32, Error> {
    match command {
        Command::Gci { file, assume_nonsingular } => {
            let sys = parse_system(&read(&file)?)?;
            let verdict = is_gci(&sys, assume_nonsingular);
            let doc = ReportDocument::from_verdict(&sys, &verdict, "gci");
            io.emit(doc.to_json(), doc.to_text());
            Ok(verdict_code(&verdict.outcome))
        }
        Command::Count { file, totals_only, max_subgraphs, method } => {
            let sys = parse_system(&read(&file)?)?;
            let method = match method {
                MethodArg::Enumerate => Method::Enumerate,
                MethodArg::Recursive => Method::Recursive,
                MethodArg::Auto => Method::Auto,
            };
            let opts = CountOptions { cap: max_subgraphs, totals_only, method, ..CountOptions::default() };
            let a = analyze(&sys, &opts)?;
            let doc = ReportDocument::from_analysis(&a, "count");
            io.emit(doc.to_json(), doc.to_text());
            Ok(verdict_code(&a.verdict.outcome))
        }
        Command::FromDag { dagfile } => {
            let file = parse_dag(&read(&dagfile)?)?;
            let sys = match file.weights {
                Some(weights) => {
                    let r = realize(&AbstractWeightedDag::new(file.dag, weights)?)?;
                    for w in &r.warnings {
                        let _ = writeln!(io.err, "warning: {w}");
                    }
                    r.system
                }
                None => standard_system(&file.dag)?,
            };
            let doc = SystemDocument::from_system(&sys).with_binomial_names((1..=sys.n()).map(|a| format!("vertex {a}")));
            io.emit(doc.to_json(), sys.to_string());
            Ok(EXIT_OK)
        }
        Command::Oracle { file } => {
            let sys = parse_system(&read(&file)?)?;
            if sys.n() > PATTERN_LIMIT {
                return Err(Error::TooLarge { what: "variables", limit: PATTERN_LIMIT, got: sys.n() });
            }
            let a = analyze(&sys, &CountOptions::default())?;
            let gci_exhaustive = exhaustive_gci(&sys)?;
            let mut doc = OracleDocument {
                version: FORMAT_VERSION.into(),
                command: "oracle".into(),
                n: sys.n(),
                gci: a.verdict.is_gci(),
                gci_exhaustive,
                distinct: None,
                distinct_bruteforce: None,
                patterns_agree: None,
                agree: a.verdict.is_gci() == gci_exhaustive,
            };
            if let Some(st) = &a.structure {
                let (table, total) = pattern_counts(&sys)?;
                let ours: BTreeMap<_, _> = st
                    .lifted
                    .patterns
                    .iter()
                    .flatten()
                    .filter(|r| !r.is_empty())
                    .map(|r| (r.pattern.clone(), r.d_l.clone()))
                    .collect();
                let patterns_agree = ours == table;
                doc.agree &= patterns_agree && total == st.lifted.distinct;
                doc.distinct = Some(st.lifted.distinct.to_string());
                doc.distinct_bruteforce = Some(total.to_string());
                doc.patterns_agree = Some(patterns_agree);
            }
            let text = format!(
                "gci: {} (exhaustive: {})\nD: {} (brute force: {})\nagree: {}",
                doc.gci,
                doc.gci_exhaustive,
                doc.distinct.as_deref().unwrap_or("-"),
                doc.distinct_bruteforce.as_deref().unwrap_or("-"),
                doc.agree
            );
            io.emit(serde_json::to_string_pretty(&doc).expect("serializable"), text);
            Ok(if doc.agree { EXIT_OK } else { EXIT_NOT_GCI })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { format: cli.format, out, err };
    match run_command(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => io.fail(&e),
    }
}

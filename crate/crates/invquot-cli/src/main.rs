//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation detects an invariant
//! violation or a mismatch, 2 on usage errors (bad flag values, malformed
//! rule files, unknown rule ids).

use clap::{Parser, Subcommand, ValueEnum};
use invquot::report::{self, Format};
use invquot::rules::{Provenance, RuleSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "invquot",
    version,
    about = "classify involutions on minimal surfaces of general type with p_g = q = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Paper,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Paper => Format::Paper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProvenanceArg {
    Numeric,
    Geometric,
}

impl From<ProvenanceArg> for Provenance {
    fn from(p: ProvenanceArg) -> Provenance {
        match p {
            ProvenanceArg::Numeric => Provenance::Numeric,
            ProvenanceArg::Geometric => Provenance::Geometric,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate branch configurations and apply the exclusion rules
    Classify {
        /// K_S^2 of the covering surface, between 1 and 9
        #[arg(long = "k2")]
        k2: i64,
        /// Restrict to one fixed-point count
        #[arg(long)]
        k: Option<i64>,
        /// Restrict to one K_W^2
        #[arg(long, allow_hyphen_values = true)]
        kw2: Option<i64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Show enumeration rejections and the instantiated bounds
        #[arg(long)]
        trace: bool,
        /// Load extra exclusion rules from a file
        #[arg(long)]
        rules_file: Option<PathBuf>,
    },
    /// Assess whether a quotient can be birational to an Enriques surface
    Enriques {
        /// K_S^2 of the covering surface, between 1 and 9
        #[arg(long = "k2")]
        k2: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Recompute and verify the built-in double-cover examples
    Examples {
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Show the exclusion-rule registry
    Rules {
        /// Keep only rules with this provenance
        #[arg(long, value_enum)]
        provenance: Option<ProvenanceArg>,
        /// Show a single rule by id
        #[arg(long)]
        rule: Option<String>,
        /// Load extra exclusion rules from a file
        #[arg(long)]
        rules_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

struct Failure {
    message: String,
    code: u8,
}

impl From<report::Error> for Failure {
    fn from(e: report::Error) -> Failure {
        Failure {
            message: e.to_string(),
            code: if e.is_usage() { 2 } else { 1 },
        }
    }
}

fn load_rules(path: Option<&Path>) -> Result<RuleSet, Failure> {
    match path {
        None => Ok(RuleSet::builtin()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure {
                message: format!("cannot read {}: {e}", p.display()),
                code: 2,
            })?;
            Ok(RuleSet::with_file(&text).map_err(report::Error::from)?)
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Classify {
            k2,
            k,
            kw2,
            format,
            trace,
            rules_file,
        } => {
            let rules = load_rules(rules_file.as_deref())?;
            let r = report::classify(k2, k, kw2, &rules)?;
            Ok(report::render_classification(&r, format.into(), trace))
        }
        Command::Enriques { k2, format } => {
            let r = report::enriques_report(k2)?;
            Ok(report::render_enriques(&r, format.into()))
        }
        Command::Examples { format } => {
            let r = report::examples_report()?;
            Ok(report::render_examples(&r, format.into()))
        }
        Command::Rules {
            provenance,
            rule,
            rules_file,
            format,
        } => {
            let set = load_rules(rules_file.as_deref())?;
            let r = report::rules_report(&set, provenance.map(Into::into), rule.as_deref())?;
            Ok(report::render_rules(&r, format.into()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

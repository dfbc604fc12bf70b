//! Batch command-line front end.
//!
//! Parameters are resolved in three layers: the command's defaults, then an
//! optional `--config` file, then flags given on the command line.

mod commands;
mod config;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::parser::ValueSource;
use clap::{Arg, ArgAction, ArgMatches, Command};
use serde_json::{json, Value};
use thiserror::Error;

pub use commands::{CostEstimate, CommandSpec, COMMANDS};
pub use config::{config_roundtrip, ConfigError, ExperimentConfig, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Domain(_) => EXIT_DOMAIN,
            Self::Internal(_) => EXIT_INTERNAL,
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Domain(e.to_string())
            }
        })*
    };
}

domain_errors!(
    crate::zeta_core::ZetaError,
    crate::beatty::BeattyError,
    crate::dirichlet_progressions::DirichletError,
    crate::equidistribution::EquidistError,
    crate::euler_product_model::EulerError,
    crate::shift_search::ShiftError
);

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        Self::Usage(e.to_string())
    }
}

fn build_cli() -> Command {
    let mut cmd = Command::new("zeta-discrete")
        .about("Numerical experiments on zeta values along discrete vertical sets")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg(
            Arg::new("config")
                .long("config")
                .global(true)
                .value_name("PATH")
                .help("key = value file; flags given on the command line take precedence"),
        )
        .arg(
            Arg::new("dry-run")
                .long("dry-run")
                .global(true)
                .action(ArgAction::SetTrue)
                .help("print the resolved config and a cost estimate, then exit"),
        )
        .arg(
            Arg::new("threads")
                .long("threads")
                .global(true)
                .value_name("N")
                .value_parser(clap::value_parser!(usize))
                .help("worker threads (default: hardware parallelism)"),
        )
        .arg(
            Arg::new("output")
                .long("output")
                .global(true)
                .value_name("PATH")
                .help("write the report here instead of stdout"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["json", "csv"])
                .help("report format [default: json]"),
        )
        .arg(
            Arg::new("seed")
                .long("seed")
                .global(true)
                .value_parser(clap::value_parser!(u64))
                .help("generator seed; required by random experiments"),
        );
    for spec in COMMANDS {
        let mut sub = Command::new(spec.name).about(spec.about);
        for p in spec.params {
            let help = match p.default {
                Some(d) if !d.is_empty() => format!("{} [default: {d}]", p.help),
                _ => p.help.to_string(),
            };
            sub = sub.arg(
                Arg::new(p.name)
                    .long(p.name)
                    .value_name("VALUE")
                    .allow_negative_numbers(true)
                    .help(help),
            );
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

fn from_cli<'a>(m: &'a ArgMatches, id: &str) -> Option<&'a String> {
    match m.value_source(id) {
        Some(ValueSource::CommandLine) => m.get_one::<String>(id),
        _ => None,
    }
}

/// Merges defaults, config file and flags into one config.
fn resolve(matches: &ArgMatches) -> Result<(ExperimentConfig, Vec<String>), CliError> {
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let spec = commands::spec(name).expect("registered subcommand");
    let file = match sub.get_one::<String>("config") {
        Some(path) => Some(ExperimentConfig::load(std::path::Path::new(path))?),
        None => None,
    };
    let mut warnings = Vec::new();
    let mut params: BTreeMap<String, String> = spec
        .params
        .iter()
        .filter_map(|p| p.default.map(|d| (p.name.to_string(), d.to_string())))
        .collect();
    if let Some(f) = &file {
        if f.command != name {
            return Err(CliError::Usage(format!(
                "config is for `{}` but the command is `{name}`",
                f.command
            )));
        }
        for (k, v) in &f.params {
            if spec.params.iter().any(|p| p.name == k) {
                params.insert(k.clone(), v.clone());
            } else {
                warnings.push(format!("unknown config key `{k}` ignored"));
            }
        }
    }
    for p in spec.params {
        if let Some(v) = from_cli(sub, p.name) {
            params.insert(p.name.to_string(), v.clone());
        }
    }
    let seed = sub
        .get_one::<u64>("seed")
        .copied()
        .or(file.as_ref().map(|f| f.seed));
    let seed = match (seed, spec.needs_seed) {
        (Some(s), _) => s,
        (None, false) => 0,
        (None, true) => return Err(CliError::Usage(format!("`{name}` needs an explicit --seed"))),
    };
    let format = match sub.get_one::<String>("format") {
        Some(f) => f.parse().map_err(CliError::Usage)?,
        None => file.as_ref().map_or(OutputFormat::Json, |f| f.format),
    };
    let output = sub
        .get_one::<String>("output")
        .cloned()
        .or_else(|| file.as_ref().and_then(|f| f.output.clone()));
    Ok((
        ExperimentConfig {
            command: name.to_string(),
            seed,
            format,
            output,
            params,
        },
        warnings,
    ))
}

/// The JSON report; `timestamp` is the only field that varies between
/// identical runs.
pub fn report_json(config: &ExperimentConfig, warnings: &[String], result: &Value, timestamp: u64) -> String {
    let report = json!({
        "tool": "zeta-discrete",
        "version": env!("CARGO_PKG_VERSION"),
        "command": config.command,
        "config": config,
        "warnings": warnings,
        "result": result,
        "timestamp": timestamp,
    });
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    s
}

/// Drops the `timestamp` line from a JSON report for comparisons.
pub fn strip_timestamp(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .map(|l| l.trim_end_matches(','))
        .collect::<Vec<_>>()
        .join("\n")
}

fn scalar_csv(result: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, v) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::Number(n) => match n.as_f64() {
                Some(x) if !n.is_i64() && !n.is_u64() => out.push_str(&format!("{prefix},{x:.16e}\n")),
                _ => out.push_str(&format!("{prefix},{n}\n")),
            },
            Value::Bool(b) => out.push_str(&format!("{prefix},{b}\n")),
            Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
            Value::Null | Value::Array(_) => {}
        }
    }
    let mut out = String::from("key,value\n");
    walk("", result, &mut out);
    out
}

fn execute(config: &ExperimentConfig, warnings: &[String], dry_run: bool) -> Result<String, CliError> {
    let params = commands::Params::new(&config.params);
    if dry_run {
        let cost = commands::estimate(&config.command, &params)?;
        let mut text = config.to_text()?;
        text.push_str(&format!(
            "# cost estimate: zeta_evaluations = {}, series_terms = {:.3e}, other_operations = {:.3e}\n",
            cost.zeta_evaluations, cost.series_terms, cost.other_operations
        ));
        return Ok(text);
    }
    let outcome = commands::execute(&config.command, &params, config.seed)?;
    Ok(match config.format {
        OutputFormat::Json => {
            let ts = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            report_json(config, warnings, &outcome.result, ts)
        }
        OutputFormat::Csv => outcome.csv.unwrap_or_else(|| scalar_csv(&outcome.result)),
    })
}

fn run_inner(argv: &[String]) -> Result<(), CliError> {
    let matches = match build_cli().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    Ok(())
                }
                _ => Err(CliError::Usage(e.to_string())),
            };
        }
    };
    let (config, warnings) = resolve(&matches)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let sub = matches.subcommand().expect("subcommand required").1;
    let dry_run = sub.get_flag("dry-run");
    let threads = sub.get_one::<usize>("threads").copied().unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let text = pool.install(|| execute(&config, &warnings, dry_run))?;
    match (&config.output, dry_run) {
        (Some(path), false) => std::fs::write(path, text).map_err(|e| CliError::Internal(format!("{path}: {e}")))?,
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Internal(e.to_string()))?;
        }
    }
    Ok(())
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run(argv: &[String]) -> i32 {
    match run_inner(argv) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

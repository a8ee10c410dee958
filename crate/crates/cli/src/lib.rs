//! Argument parsing and command execution for the `sombor` binary.
//!
//! Kept as a library so the commands can be driven in-process by tests; the
//! binary only wires [`parse_args`] and [`execute`] to the process.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::json;
use thiserror::Error;

use sombor::claims::{run_suite, SuiteOptions, TableFamily};
use sombor::constructors::{ConstructError, GraphSpec, ShadowConvention};
use sombor::eigen::{symmetric_eigenvalues, DEFAULT_EIGEN_TOL};
use sombor::format::{fmt_sig, round_sig, REPORT_DIGITS};
use sombor::graph::{Graph, GraphError};
use sombor::invariants::{adjacency_matrix, sombor_index, sombor_matrix};
use sombor::matrix::MatrixError;
use sombor::report::{to_csv, to_json, to_markdown};

/// Specs checked by `verify` when no `--spec` is given.
pub const DEFAULT_VERIFY_SPECS: [&str; 4] = [
    "cycle(6)",
    "complete(4)",
    "complete_bipartite(3,3)",
    "hypercube(3)",
];
pub const DEFAULT_M_RANGE: std::ops::RangeInclusive<usize> = 1..=3;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` / `--version`: not a failure, the text goes to stdout.
    #[error("{0}")]
    Help(String),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Construct(#[from] ConstructError),

    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },

    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Write a graph in edge-list format.
    Gen,
    /// Print the Sombor index.
    Index,
    /// Print eigenvalues, largest first.
    Spectrum,
    /// Print the energy (sum of absolute eigenvalues).
    Energy,
    /// Check every claim and print the report.
    Verify,
    /// Table rows for cycle, complete, hypercube and complete bipartite graphs.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
    Edgelist,
}

/// Which matrix `spectrum` and `energy` work on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum MatrixKind {
    #[default]
    Adjacency,
    Sombor,
}

impl MatrixKind {
    fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Sombor => "sombor",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sombor",
    version,
    about = "Sombor index and energy of m-splitting and m-shadow graphs"
)]
struct Args {
    command: Command,

    /// Graph spec, e.g. `cycle(6)|splitting(m=1)`. Repeatable for `verify`.
    #[arg(long)]
    spec: Vec<String>,

    /// Edge-list file to read instead of a spec.
    #[arg(long)]
    file: Option<PathBuf>,

    /// Transform parameter: a single integer or an inclusive range `a..b`.
    #[arg(long)]
    m: Option<String>,

    /// Table row parameter.
    #[arg(long)]
    n: Option<usize>,

    #[arg(long, value_parser = parse_convention)]
    convention: Option<ShadowConvention>,

    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,

    #[arg(long, value_enum)]
    format: Option<OutputFormat>,

    #[arg(long, value_enum)]
    matrix: Option<MatrixKind>,

    #[arg(long, short = 'o')]
    out: Option<PathBuf>,

    /// Exit with status 2 when any claim mismatches.
    #[arg(long)]
    strict: bool,
}

fn parse_convention(s: &str) -> Result<ShadowConvention, String> {
    s.parse()
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Spec(GraphSpec),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub sources: Vec<GraphSource>,
    pub m_values: Vec<usize>,
    pub conventions: Vec<ShadowConvention>,
    pub tolerance: Option<f64>,
    pub format: Option<OutputFormat>,
    pub matrix: MatrixKind,
    pub table_n: Option<usize>,
    pub out: Option<PathBuf>,
    pub strict: bool,
}

/// Parses `m` as `a` or `a..b` (inclusive), all values at least 1.
pub fn parse_m_range(s: &str) -> Result<Vec<usize>, String> {
    let int = |t: &str| -> Result<usize, String> {
        t.trim()
            .parse()
            .map_err(|_| format!("--m: expected an integer, got {t:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (int(a)?, int(b)?),
        None => {
            let v = int(s)?;
            (v, v)
        }
    };
    if lo == 0 {
        return Err("--m: values must be at least 1".into());
    }
    if lo > hi {
        return Err(format!("--m: empty range {s:?}"));
    }
    Ok((lo..=hi).collect())
}

/// Parses arguments (without the program name) into a validated config.
pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<CliConfig, CliError> {
    let args =
        Args::try_parse_from(std::iter::once("sombor").chain(argv.iter().map(AsRef::as_ref)))
            .map_err(|e| match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliError::Help(e.to_string())
                }
                _ => CliError::Usage(e.to_string().trim_end().to_string()),
            })?;
    let command = args.command;
    let name = format!("{command:?}").to_lowercase();
    let reject = |present: bool, flag: &str| -> Result<(), CliError> {
        if present {
            Err(usage(format!("{flag} is not accepted by `{name}`")))
        } else {
            Ok(())
        }
    };

    let suite_command = matches!(command, Command::Verify | Command::Table);
    reject(!suite_command && args.m.is_some(), "--m")?;
    reject(!suite_command && args.convention.is_some(), "--convention")?;
    reject(!suite_command && args.strict, "--strict")?;
    reject(command != Command::Table && args.n.is_some(), "--n")?;
    reject(
        !matches!(command, Command::Spectrum | Command::Energy) && args.matrix.is_some(),
        "--matrix",
    )?;
    reject(command == Command::Gen && args.tol.is_some(), "--tol")?;

    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(usage(format!("--tol must be a positive number, got {tol}")));
        }
    }

    let allowed: &[OutputFormat] = match command {
        Command::Gen => &[OutputFormat::Edgelist],
        Command::Index | Command::Spectrum | Command::Energy => &[OutputFormat::Json],
        Command::Verify | Command::Table => &[
            OutputFormat::Json,
            OutputFormat::Csv,
            OutputFormat::Markdown,
        ],
    };
    if let Some(format) = args.format {
        if !allowed.contains(&format) {
            return Err(usage(
                format!("--format {format:?} is not valid for `{name}`").to_lowercase(),
            ));
        }
    }

    let mut sources = Vec::new();
    for text in &args.spec {
        sources.push(GraphSource::Spec(
            text.parse()
                .map_err(|e: ConstructError| usage(format!("--spec: {e}")))?,
        ));
    }
    if let Some(path) = args.file {
        fs::File::open(&path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        sources.push(GraphSource::File(path));
    }
    match command {
        Command::Verify => reject(
            matches!(sources.last(), Some(GraphSource::File(_))),
            "--file",
        )?,
        Command::Table => {
            reject(!sources.is_empty(), "--spec/--file")?;
            if args.n.is_none() {
                return Err(usage("`table` requires --n"));
            }
        }
        _ => match sources.len() {
            0 => return Err(usage(format!("`{name}` requires --spec or --file"))),
            1 => {}
            _ => {
                return Err(usage(format!(
                    "`{name}` takes exactly one of --spec or --file"
                )))
            }
        },
    }

    let m_values = match &args.m {
        Some(text) => parse_m_range(text).map_err(usage)?,
        None => DEFAULT_M_RANGE.collect(),
    };
    let conventions = match args.convention {
        Some(c) => vec![c],
        None => ShadowConvention::ALL.to_vec(),
    };

    Ok(CliConfig {
        command,
        sources,
        m_values,
        conventions,
        tolerance: args.tol,
        format: args.format,
        matrix: args.matrix.unwrap_or_default(),
        table_n: args.n,
        out: args.out,
        strict: args.strict,
    })
}

/// What a command produced: text for the output destination, diagnostics
/// for stderr, and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub diagnostics: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            diagnostics: String::new(),
            exit_code: EXIT_OK,
        }
    }
}

fn load(source: &GraphSource) -> Result<(String, Graph), CliError> {
    match source {
        GraphSource::Spec(spec) => Ok((spec.to_string(), spec.generate()?)),
        GraphSource::File(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let graph = Graph::from_edge_list(&text).map_err(|source| CliError::Graph {
                path: path.clone(),
                source,
            })?;
            Ok((path.display().to_string(), graph))
        }
    }
}

fn rounded(x: f64) -> f64 {
    round_sig(x, REPORT_DIGITS)
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string(&value).expect("json value serializes");
    s.push('\n');
    s
}

fn source_key(source: &GraphSource) -> &'static str {
    match source {
        GraphSource::Spec(_) => "spec",
        GraphSource::File(_) => "file",
    }
}

pub fn execute(config: &CliConfig) -> Result<Outcome, CliError> {
    let eigen_tol = config.tolerance.unwrap_or(DEFAULT_EIGEN_TOL);
    let json = config.format == Some(OutputFormat::Json);
    match config.command {
        Command::Gen => {
            let (_, g) = load(&config.sources[0])?;
            Ok(Outcome::ok(g.to_edge_list()))
        }
        Command::Index => {
            let source = &config.sources[0];
            let (label, g) = load(source)?;
            let value = sombor_index(&g);
            Ok(Outcome::ok(if json {
                json_line(json!({ source_key(source): label, "sombor_index": rounded(value) }))
            } else {
                format!("{}\n", fmt_sig(value, REPORT_DIGITS))
            }))
        }
        Command::Spectrum | Command::Energy => {
            let source = &config.sources[0];
            let (label, g) = load(source)?;
            let matrix = match config.matrix {
                MatrixKind::Adjacency => adjacency_matrix(&g),
                MatrixKind::Sombor => sombor_matrix(&g),
            };
            let spectrum = symmetric_eigenvalues(&matrix, eigen_tol)?;
            let kind = config.matrix.as_str();
            let output = if config.command == Command::Energy {
                if json {
                    json_line(
                        json!({ source_key(source): label, "matrix": kind, "energy": rounded(spectrum.energy()) }),
                    )
                } else {
                    format!("{}\n", fmt_sig(spectrum.energy(), REPORT_DIGITS))
                }
            } else if json {
                let values: Vec<f64> = spectrum.values().iter().map(|&x| rounded(x)).collect();
                json_line(
                    json!({ source_key(source): label, "matrix": kind, "eigenvalues": values }),
                )
            } else {
                spectrum
                    .values()
                    .iter()
                    .map(|&x| format!("{}\n", fmt_sig(x, REPORT_DIGITS)))
                    .collect()
            };
            Ok(Outcome::ok(output))
        }
        Command::Verify | Command::Table => run_report(config),
    }
}

fn run_report(config: &CliConfig) -> Result<Outcome, CliError> {
    let (specs, prefix) = if config.command == Command::Table {
        let n = config.table_n.expect("validated by parse_args");
        (TableFamily::all_specs(n), Some("TBL1".to_string()))
    } else if config.sources.is_empty() {
        let defaults = DEFAULT_VERIFY_SPECS
            .iter()
            .map(|s| s.parse().expect("default spec parses"));
        (defaults.collect(), None)
    } else {
        let specs = config
            .sources
            .iter()
            .filter_map(|s| match s {
                GraphSource::Spec(spec) => Some(spec.clone()),
                GraphSource::File(_) => None,
            })
            .collect();
        (specs, None)
    };
    let options = SuiteOptions {
        tolerance: config.tolerance,
        conventions: config.conventions.clone(),
        claim_prefix: prefix,
    };
    let report = run_suite(&specs, &config.m_values, &options);

    let output = match config.format.unwrap_or(OutputFormat::Markdown) {
        OutputFormat::Json => to_json(&report.results),
        OutputFormat::Csv => to_csv(&report.results),
        _ => to_markdown(&report.results),
    };
    let diagnostics: String = report
        .errors
        .iter()
        .map(|e| match &e.claim_id {
            Some(id) => format!("error: {} on {}: {}\n", id, e.spec, e.message),
            None => format!("error: {}: {}\n", e.spec, e.message),
        })
        .collect();

    // Table rows for families that cannot be built at this n are skipped.
    let errors_are_fatal = config.command == Command::Verify && !report.errors.is_empty();
    let exit_code = if errors_are_fatal {
        EXIT_ERROR
    } else if config.strict && !report.all_match() {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        output,
        diagnostics,
        exit_code,
    })
}

//! The `glsg` command line.
//!
//! Exit codes: 0 on success, 1 on domain errors (the error is written to
//! stderr as one line starting with its kind, e.g. `NotAssociative i=1 j=1 k=2`),
//! 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glsg_core::graph::{build_graph_with_cap, export_graph, ExportFormat, GraphError, DEFAULT_VERTEX_CAP};
use glsg_core::semigroup::FamilyParseError;
use glsg_core::spectral::{block_spectra, spectrum, SpectralError, DEFAULT_CLUSTER_TOLERANCE};
use glsg_core::{CayleyTable, FamilySpec, TableError};
use serde_json::{json, Value};
use thiserror::Error;

use crate::census::{self, CensusError, CensusOptions};
use crate::format::{self, FormatError};
use crate::report::{self, ReportError};

const AFTER_HELP: &str = "\
Family specs:
  null:N              null semigroup, element N is the zero
  leftzero:N          x*y = x
  rightzero:N         x*y = y
  band:PxQ            rectangular band, (a,b) has index (a-1)Q+b
  cyclic:N            cyclic group Z_N
  const:N:C           every product equals C
  brandt:cyclic:M:N   Brandt semigroup over Z_M with N indices (order 1+M*N^2)

Table files:
  text  first line n, then n lines of n space-separated entries in 1..n
  json  {\"n\": 3, \"table\": [[3,3,3],[3,3,3],[3,3,3]]}";

#[derive(Debug, Parser)]
#[command(
    name = "glsg",
    version,
    about = "Generalized Latin square graphs of finite semigroups",
    after_help = AFTER_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Table file (text or JSON)
    #[arg(long)]
    file: Option<PathBuf>,
    /// Family spec, e.g. null:3 or band:2x2
    #[arg(long)]
    family: Option<String>,
    /// Read the table from standard input
    #[arg(long)]
    stdin: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CensusFormat {
    Csv,
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    EdgeList,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a table is a valid semigroup
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the table of a named family
    Family {
        /// Family spec, e.g. brandt:cyclic:2:2
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Counting invariants, formula degrees and regularity
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Skip the explicit-graph degree cross-check
        #[arg(long)]
        no_oracle: bool,
    },
    /// Export the graph as an edge list or DOT
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "edge-list")]
        export: GraphFormat,
        /// Write to this file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Lift the 4096-vertex limit
        #[arg(long)]
        allow_large: bool,
    },
    /// Adjacency spectrum and energy
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Eigenvalues closer than this join one cluster
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOLERANCE)]
        tol: f64,
        /// Also report the spectrum of every connected component
        #[arg(long)]
        blocks: bool,
        #[arg(long)]
        allow_large: bool,
    },
    /// Count semigroups and regular graphs for every order up to N
    Census {
        #[arg(long)]
        max_order: usize,
        /// Permit order 6 (long run)
        #[arg(long)]
        allow_order_6: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: CensusFormat,
        /// List the regular semigroups of each order
        #[arg(long)]
        witnesses: bool,
        /// Resumable state file for the largest order
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Re-canonicalize this many random relabelings per order
        #[arg(long, default_value_t = 0)]
        spot_check: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print progress to stderr
        #[arg(long)]
        progress: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Family(#[from] FamilyParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("SpotCheckFailed order={order} failures={failures}")]
    SpotCheck { order: usize, failures: usize },
    #[error("IoError {0}")]
    Io(#[from] io::Error),
}

fn load_input(input: &Input, stdin: &mut dyn Read) -> Result<CayleyTable, CliError> {
    if let Some(path) = &input.file {
        return Ok(format::parse_auto(&fs::read_to_string(path)?)?);
    }
    if let Some(spec) = &input.family {
        return Ok(spec.parse::<FamilySpec>()?.build()?);
    }
    let mut buf = String::new();
    stdin.read_to_string(&mut buf)?;
    Ok(format::parse_auto(&buf)?)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{v}")
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { input, format } => {
            let t = load_input(&input, stdin)?;
            match format {
                Format::Text => writeln!(out, "valid order={}", t.order())?,
                Format::Json => emit_json(out, &json!({ "order": t.order(), "valid": true }))?,
            }
        }
        Command::Family { spec, format } => {
            let t = spec.parse::<FamilySpec>()?.build()?;
            match format {
                Format::Text => out.write_all(format::write_text(&t).as_bytes())?,
                Format::Json => emit_json(out, &format::table_json_value(&t))?,
            }
        }
        Command::Analyze {
            input,
            format,
            no_oracle,
        } => {
            let t = load_input(&input, stdin)?;
            let analysis = report::analyze(&t, !no_oracle)?;
            if analysis.oracle == report::OracleStatus::Skipped {
                writeln!(
                    err,
                    "notice: oracle cross-check skipped for order {} > {}",
                    t.order(),
                    report::ORACLE_MAX_ORDER
                )?;
            }
            match format {
                Format::Text => out.write_all(analysis.to_text().as_bytes())?,
                Format::Json => emit_json(out, &analysis.to_json())?,
            }
        }
        Command::Graph {
            input,
            export,
            output,
            allow_large,
        } => {
            let t = load_input(&input, stdin)?;
            let g = build_graph_with_cap(&t, if allow_large { usize::MAX } else { DEFAULT_VERTEX_CAP })?;
            let fmt = match export {
                GraphFormat::EdgeList => ExportFormat::EdgeList,
                GraphFormat::Dot => ExportFormat::Dot,
            };
            let mut text = export_graph(&g, fmt);
            if !text.is_empty() && !text.ends_with('\n') {
                text.push('\n');
            }
            match output {
                Some(path) => fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Spectrum {
            input,
            format,
            tol,
            blocks,
            allow_large,
        } => {
            let t = load_input(&input, stdin)?;
            let g = build_graph_with_cap(&t, if allow_large { usize::MAX } else { DEFAULT_VERTEX_CAP })?;
            let s = spectrum(&g, tol)?;
            let parts = if blocks { Some(block_spectra(&g, tol)?) } else { None };
            match format {
                Format::Json => {
                    let mut v = report::spectrum_json(&s);
                    if let Some(parts) = &parts {
                        let comps = glsg_core::graph::connected_components(&g);
                        let list: Vec<Value> = parts
                            .iter()
                            .zip(&comps)
                            .map(|(p, c)| {
                                let mut b = report::spectrum_json(p);
                                b["vertices"] = json!(c.iter().map(|x| x + 1).collect::<Vec<_>>());
                                b
                            })
                            .collect();
                        v["blocks"] = Value::Array(list);
                    }
                    emit_json(out, &v)?;
                }
                Format::Text => {
                    out.write_all(report::spectrum_text(&s).as_bytes())?;
                    for (idx, p) in parts.iter().flatten().enumerate() {
                        writeln!(out, "block {}:", idx + 1)?;
                        out.write_all(report::spectrum_text(p).as_bytes())?;
                    }
                }
            }
        }
        Command::Census {
            max_order,
            allow_order_6,
            format,
            witnesses,
            checkpoint,
            spot_check,
            seed,
            progress,
        } => run_census(
            CensusArgs {
                max_order,
                allow_order_6,
                format,
                witnesses,
                checkpoint,
                spot_check,
                seed,
                progress,
            },
            out,
            err,
        )?,
    }
    Ok(())
}

struct CensusArgs {
    max_order: usize,
    allow_order_6: bool,
    format: CensusFormat,
    witnesses: bool,
    checkpoint: Option<PathBuf>,
    spot_check: usize,
    seed: u64,
    progress: bool,
}

fn run_census(args: CensusArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    glsg_core::enumerate::check_order(args.max_order, args.allow_order_6).map_err(CensusError::from)?;
    let mut rows = Vec::new();
    let mut witness_json = Vec::new();
    let mut witness_text = String::new();
    let mut checks = Vec::new();
    for n in 1..=args.max_order {
        let options = CensusOptions {
            allow_order_6: args.allow_order_6,
            // only the largest (slowest) order is checkpointed
            checkpoint: if n == args.max_order { args.checkpoint.clone() } else { None },
            batch_size: 0,
            progress: if args.progress {
                Some(Box::new(|p: census::Progress| {
                    eprintln!(
                        "order {}: {}/{} first rows, {} labeled, {} classes",
                        p.order, p.rows_done, p.rows_total, p.labeled, p.classes
                    );
                }))
            } else {
                None
            },
        };
        let outcome = census::census(n, &options)?;
        if args.witnesses {
            for w in census::witnesses_of(&outcome) {
                witness_json.push(json!({
                    "order": n,
                    "degree": w.degree,
                    "table": w.table.rows_one_based(),
                }));
                witness_text.push_str(&format!("order {n} degree {}\n", w.degree));
                for line in format::write_text(&w.table).lines().skip(1) {
                    witness_text.push_str(&format!("  {line}\n"));
                }
            }
        }
        if args.spot_check > 0 {
            let r = census::spot_check_canonical(n, args.spot_check, args.seed, args.allow_order_6)?;
            if r.failures > 0 {
                return Err(CliError::SpotCheck {
                    order: n,
                    failures: r.failures,
                });
            }
            writeln!(err, "spot check order {n}: {} relabelings, 0 failures", r.checked)?;
            checks.push(r);
        }
        rows.push(outcome.row);
    }
    match args.format {
        CensusFormat::Csv => {
            out.write_all(census::format_csv(&rows).as_bytes())?;
            if args.witnesses {
                out.write_all(witness_text.as_bytes())?;
            }
        }
        CensusFormat::Text => {
            out.write_all(census::format_text(&rows).as_bytes())?;
            if args.witnesses {
                out.write_all(witness_text.as_bytes())?;
            }
        }
        CensusFormat::Json => {
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "order": r.order,
                        "labeled_total": r.labeled_total,
                        "canonical_total": r.canonical_total,
                        "regular_count": r.regular_count,
                        "percentage": report::round12(r.percentage),
                    })
                })
                .collect();
            let mut v = json!({ "rows": rows_json });
            if args.witnesses {
                v["witnesses"] = Value::Array(witness_json);
            }
            if !checks.is_empty() {
                v["spot_checks"] = serde_json::to_value(&checks).expect("serializable");
            }
            emit_json(out, &v)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_io<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdin, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            1
        }
    }
}

pub fn run() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

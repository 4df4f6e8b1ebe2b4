//! Command-line front end for the `qtrees` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bounds::bounds_for;
use crate::broadcast;
use crate::construct::construct;
use crate::format::{self, export, ExportFormat, FormatError};
use crate::hypercube::{Dimension, HypercubeError, N_MAX};
use crate::oracle::{self, OracleError, SmallGraph};
use crate::verify::{verify_decomposition, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "qtrees",
    version,
    about = "Edge-disjoint spanning tree packings of hypercubes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the decomposition of Q_n and write it to a file.
    Construct {
        #[arg(short = 'n', long = "dimension")]
        n: u32,
        #[arg(short, long)]
        output: PathBuf,
        /// Raise the dimension cap (expert).
        #[arg(long)]
        cap_override: Option<u32>,
    },
    /// Check every structural claim of a decomposition file.
    Verify {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cap_override: Option<u32>,
    },
    /// Print the closed-form invariants of Q_n.
    Info {
        #[arg(short = 'n', long = "dimension")]
        n: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cap_override: Option<u32>,
    },
    /// Render a decomposition file as dot, an edge list, or a JSON document.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        cap_override: Option<u32>,
    },
    /// Run a brute-force oracle on a small graph given as an edge list.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        which: OracleKind,
    },
    /// Tree depths, link load and pipelined broadcast time.
    Broadcast {
        /// Build Q_n on the fly.
        #[arg(short = 'n', long = "dimension", conflicts_with = "input")]
        n: Option<u32>,
        /// Read a decomposition file instead.
        #[arg(long, required_unless_present = "n")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        root: u64,
        #[arg(long, default_value_t = 1)]
        parts: u32,
        /// Per-hop cost, e.g. `1us`, `250ns`.
        #[arg(long, default_value = "1us", value_parser = humantime::parse_duration)]
        hop_cost: Duration,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cap_override: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Arboricity,
    Packing,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Cap(String),
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::VerificationFailed => EXIT_VERIFY_FAILED,
        }
    }
}

impl From<HypercubeError> for CliError {
    fn from(e: HypercubeError) -> Self {
        match e {
            HypercubeError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn dimension(n: u32, cap_override: Option<u32>) -> Result<Dimension, CliError> {
    Ok(Dimension::with_cap(n, cap_override.unwrap_or(N_MAX))?)
}

fn load(path: &Path, cap_override: Option<u32>) -> Result<crate::Decomposition, CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    format::decode(&bytes, cap_override.unwrap_or(N_MAX)).map_err(|e| match e {
        FormatError::Dimension(HypercubeError::CapExceeded { .. }) => {
            CliError::Cap(format!("{}: {e}", path.display()))
        }
        e => CliError::Parse(format!("{}: {e}", path.display())),
    })
}

/// Parses `u v` pairs, one per line, 0-based; `#` starts a comment. The vertex
/// count is one more than the largest id seen.
pub fn parse_edge_list(text: &str) -> Result<SmallGraph, CliError> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<_> = line.split_whitespace().collect();
        let bad = || CliError::Parse(format!("line {}: expected `u v`, got {raw:?}", lineno + 1));
        if fields.len() != 2 {
            return Err(bad());
        }
        let u: usize = fields[0].parse().map_err(|_| bad())?;
        let v: usize = fields[1].parse().map_err(|_| bad())?;
        edges.push((u, v));
    }
    let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    if vertices > oracle::SUBSET_CAP {
        return Err(CliError::Cap(format!(
            "{vertices} vertices exceeds the oracle cap of {}",
            oracle::SUBSET_CAP
        )));
    }
    Ok(SmallGraph::new(vertices, &edges)?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(io_err(Path::new("<stdout>")))
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Construct {
            n,
            output,
            cap_override,
        } => {
            let n = dimension(n, cap_override)?;
            let d = construct(n);
            let file = fs::File::create(&output).map_err(io_err(&output))?;
            format::write_to(&d, std::io::BufWriter::new(file)).map_err(io_err(&output))?;
            let leftover = d.labels.iter().filter(|&&l| l == 0).count();
            write_out(
                out,
                &format!(
                    "n = {}, k = {}, kind = {}, edges = {}, leftover = {}\nwrote {}\n",
                    d.n,
                    d.k,
                    d.kind,
                    d.labels.len(),
                    leftover,
                    output.display()
                ),
            )
        }
        Command::Verify {
            input,
            json: as_json,
            cap_override,
        } => {
            let d = load(&input, cap_override)?;
            let report = verify_decomposition(&d).map_err(|e: VerifyError| {
                CliError::Parse(format!("{}: malformed decomposition: {e}", input.display()))
            })?;
            let text = if as_json {
                json(&report)
            } else {
                report.to_string()
            };
            write_out(out, &format!("{text}\n"))?;
            if report.overall {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
        Command::Info {
            n,
            json: as_json,
            cap_override,
        } => {
            let report = bounds_for(dimension(n, cap_override)?);
            let text = if as_json {
                json(&report)
            } else {
                report.to_string()
            };
            write_out(out, &format!("{text}\n"))
        }
        Command::Export {
            input,
            format,
            output,
            cap_override,
        } => {
            let d = load(&input, cap_override)?;
            let text = export(&d, format);
            match output {
                Some(path) => fs::write(&path, text).map_err(io_err(&path)),
                None => write_out(out, &text),
            }
        }
        Command::Oracle { input, which } => {
            let text = fs::read_to_string(&input).map_err(io_err(&input))?;
            let g = parse_edge_list(&text)?;
            let value = match which {
                OracleKind::Arboricity => oracle::nw_arboricity(&g)?,
                OracleKind::Packing => oracle::packing_upper_bound(&g)?,
            };
            let name = match which {
                OracleKind::Arboricity => "arboricity",
                OracleKind::Packing => "packing",
            };
            write_out(out, &format!("{name} = {value}\n"))
        }
        Command::Broadcast {
            n,
            input,
            root,
            parts,
            hop_cost,
            json: as_json,
            cap_override,
        } => {
            let d = match (n, input) {
                (Some(n), _) => construct(dimension(n, cap_override)?),
                (None, Some(path)) => load(&path, cap_override)?,
                (None, None) => return Err(CliError::Usage("need -n or --input".into())),
            };
            let m = broadcast::metrics(&d, root, parts, hop_cost)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let text = if as_json {
                json(&m)
            } else {
                let depths: Vec<String> = m.depths.iter().map(u32::to_string).collect();
                format!(
                    "root: {}\ntrees: {}\ndepths: {}\nmax_link_load: {}\nparts: {}\nhop_cost: {}\ntotal_time: {}",
                    m.root,
                    m.depths.len(),
                    depths.join(" "),
                    m.max_link_load,
                    m.parts,
                    humantime::format_duration(m.hop_cost),
                    humantime::format_duration(m.total_time)
                )
            };
            write_out(out, &format!("{text}\n"))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

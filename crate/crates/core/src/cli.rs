//! Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage
//! error, 3 when a bound check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::diagram::{display_edge, Diagram};
use crate::error::{Error, Result};
use crate::io::{parse_batch, write_csv, write_json, ReportDocument};
use crate::procedure::{ProcedureState, GENERATOR};
use crate::stats::{exact_stats, mc_stats, plug_mc_stats};
use crate::walk::{boundary_count, decompose, genus_from_boundary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND_FAILED: i32 = 3;

/// Environment variable capping the sampling thread count.
pub const THREADS_ENV: &str = "CHORD_THREADS";

#[derive(Debug, Parser)]
#[command(name = "chord-genus", version, about = "Genus of oriented chord diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Boundary components and genus of each diagram (stdin when no source is given).
    Genus {
        #[arg(long, conflicts_with = "file")]
        diagram: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Exact statistics over every diagram of order n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Monte Carlo statistics from the random procedure.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// One run of the random procedure.
    Procedure {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trace: bool,
    },
    /// Plug statistics along procedure prefixes.
    Plugs {
        #[arg(long)]
        n: usize,
        #[arg(long = "k-max")]
        k_max: usize,
        #[arg(long)]
        runs: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match with_thread_cap(|| dispatch(cli.command, out, err)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
    match cap.filter(|&t| t > 0) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn dispatch(command: Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    match command {
        Command::Genus { diagram, file } => genus_cmd(diagram, file, out),
        Command::Enumerate { n, out: path, format } => {
            emit(ReportDocument::exact(exact_stats(n)?), format, path, out, err)
        }
        Command::Sample { n, samples, seed, out: path, format } => {
            emit(ReportDocument::sample(mc_stats(n, samples, seed)?), format, path, out, err)
        }
        Command::Procedure { n, seed, trace } => procedure_cmd(n, seed, trace, out),
        Command::Plugs { n, k_max, runs, seed, out: path, format } => {
            emit(ReportDocument::plugs(plug_mc_stats(n, k_max, runs, seed)?), format, path, out, err)
        }
    }
}

fn emit(
    doc: ReportDocument,
    format: Format,
    path: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let text = match format {
        Format::Csv => write_csv(&doc),
        Format::Json => write_json(&doc),
    };
    match path {
        Some(p) => {
            std::fs::write(&p, text.as_bytes())?;
            writeln!(err, "wrote {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    let failed = doc.bounds.has_failure();
    if failed {
        writeln!(err, "bound check failed")?;
    }
    Ok(if failed { EXIT_BOUND_FAILED } else { EXIT_OK })
}

/// `n=2 d=2 g=1 loops=2:6,2:2` with loops as `size:edges`.
pub fn genus_line(d: &Diagram) -> String {
    let d_count = boundary_count(d);
    let loops: Vec<String> =
        decompose(d).loops.iter().map(|l| format!("{}:{}", l.size, l.edge_count())).collect();
    format!(
        "n={} d={} g={} loops={}",
        d.n(),
        d_count,
        genus_from_boundary(d.n(), d_count),
        loops.join(",")
    )
}

fn genus_cmd(diagram: Option<String>, file: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let text = match (diagram, file) {
        (Some(d), _) => d,
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => std::io::read_to_string(std::io::stdin())?,
    };
    let mut failed = false;
    for line in parse_batch(&text) {
        match line.diagram.and_then(Diagram::try_from) {
            Ok(d) => writeln!(out, "{}", genus_line(&d))?,
            Err(e) => {
                failed = true;
                writeln!(out, "error line={}: {e}", line.line)?;
            }
        }
    }
    Ok(if failed { EXIT_DOMAIN } else { EXIT_OK })
}

fn procedure_cmd(n: usize, seed: u64, trace: bool, out: &mut dyn Write) -> Result<i32> {
    let mut state = ProcedureState::new(n, seed)?;
    while !state.is_complete() {
        let event = state.step()?;
        if trace {
            let mut line = format!("step={} chord={}", state.step_index(), event.chord);
            match &event.closed_loop {
                Some(l) => line += &format!(" closed=yes size={} edges={}", l.size, l.edge_count()),
                None => line += " closed=no",
            }
            if let Some(p) = event.new_pointer {
                line += &format!(" pointer={}", display_edge(p, n));
            }
            writeln!(out, "{line}")?;
        }
    }
    let closures: Vec<String> =
        state.closures().iter().map(|c| format!("{}:{}", c.step, c.size)).collect();
    let closures = closures.join(",");
    let d = state.into_diagram().ok_or(Error::PointerInLoop)?;
    writeln!(out, "seed={seed} generator=\"{GENERATOR}\" closures={closures}")?;
    writeln!(out, "diagram={d}")?;
    writeln!(out, "{}", genus_line(&d))?;
    Ok(EXIT_OK)
}

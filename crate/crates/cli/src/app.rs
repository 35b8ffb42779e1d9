//! Command tree and dispatch.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use maxline::{
    are_isomorphic, gen_max_line, gen_o, gen_star, is_line_digraph, line_digraph, max_arcs, phi,
    reconstruct_root, verify_max, Digraph, StarSpec, Workers,
};
use thiserror::Error;

use crate::format::{emit, emit_line_digraph, parse_edge_list, Format, FormatError};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "maxline", version, about = "Line digraph toolkit")]
pub struct Cli {
    /// Output format for commands that print a digraph.
    #[arg(long, global = true, value_enum, default_value = "edges")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a generated digraph.
    #[command(subcommand)]
    Gen(Generator),
    /// Print the line digraph of a root, with a vertex label table.
    Line { file: PathBuf },
    /// Print the number of arcs of the line digraph.
    Phi { file: PathBuf },
    /// Print the largest phi over digraphs with `m` arcs.
    MaxArcs { m: u64 },
    /// Decide whether the input is a line digraph (exit 1 when it is not).
    Check {
        file: PathBuf,
        /// Also print the embedded forbidden pattern.
        #[arg(long)]
        witness: bool,
    },
    /// Print a root whose line digraph is the input.
    Root { file: PathBuf },
    /// Decide whether two digraphs are isomorphic (exit 1 when not).
    Iso { first: PathBuf, second: PathBuf },
    /// Run the exhaustive verifier.
    #[command(subcommand)]
    Verify(Verification),
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// The extremal root with `m` arcs.
    O {
        m: usize,
        #[arg(long)]
        transpose: bool,
    },
    /// The extremal line digraph of order `m`.
    ExtremalLine { m: usize },
    /// A star with `x` arcs in, `y` arcs out and `c` 2-circuits.
    Star { x: usize, y: usize, c: usize },
}

#[derive(Debug, Subcommand)]
pub enum Verification {
    /// Maximize phi over all connected roots with `m` arcs.
    Max {
        m: usize,
        /// Search strategy: exhaustive or bnb.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Worker threads; output does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the full report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("{path}: {source}")]
    Format {
        path: String,
        #[source]
        source: FormatError,
    },

    #[error(transparent)]
    Core(#[from] maxline::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(maxline::Error::BoundViolated { .. }) => EXIT_MISMATCH,
            CliError::Core(maxline::Error::NotLineDigraph(_)) => EXIT_FALSE,
            _ => EXIT_USAGE,
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_graph(path: &Path) -> Result<Digraph, CliError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| CliError::Io { path: name.clone(), source })?;
        buf
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?
    };
    parse_edge_list(&text).map_err(|source| CliError::Format { path: name, source })
}

fn io_error(path: &str) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_string(),
        source,
    }
}

fn stdout_error(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".to_string(),
        source,
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let code = match &cli.command {
        Command::Gen(generator) => {
            let g = match *generator {
                Generator::O { m, transpose } => {
                    let o = gen_o(m)?;
                    if transpose {
                        o.transpose()
                    } else {
                        o
                    }
                }
                Generator::ExtremalLine { m } => gen_max_line(m)?,
                Generator::Star { x, y, c } => gen_star(StarSpec::new(x, y, c)?)?,
            };
            out.write_all(emit(&g, cli.format).as_bytes()).map_err(stdout_error)?;
            EXIT_OK
        }
        Command::Line { file } => {
            let l = line_digraph(&read_graph(file)?);
            out.write_all(emit_line_digraph(&l, cli.format).as_bytes())
                .map_err(stdout_error)?;
            EXIT_OK
        }
        Command::Phi { file } => {
            writeln!(out, "{}", phi(&read_graph(file)?)).map_err(stdout_error)?;
            EXIT_OK
        }
        Command::MaxArcs { m } => {
            writeln!(out, "{}", max_arcs(*m)).map_err(stdout_error)?;
            EXIT_OK
        }
        Command::Check { file, witness } => {
            let verdict = is_line_digraph(&read_graph(file)?);
            match verdict.witness {
                None => {
                    writeln!(out, "line").map_err(stdout_error)?;
                    EXIT_OK
                }
                Some(w) => {
                    writeln!(out, "not-line").map_err(stdout_error)?;
                    if *witness {
                        writeln!(out, "{w}").map_err(stdout_error)?;
                    }
                    EXIT_FALSE
                }
            }
        }
        Command::Root { file } => {
            let root = reconstruct_root(&read_graph(file)?)?;
            out.write_all(emit(&root, cli.format).as_bytes()).map_err(stdout_error)?;
            EXIT_OK
        }
        Command::Iso { first, second } => {
            if are_isomorphic(&read_graph(first)?, &read_graph(second)?) {
                writeln!(out, "isomorphic").map_err(stdout_error)?;
                EXIT_OK
            } else {
                writeln!(out, "not-isomorphic").map_err(stdout_error)?;
                EXIT_FALSE
            }
        }
        Command::Verify(Verification::Max {
            m,
            mode,
            jobs,
            report: path,
        }) => {
            let result = verify_max(*m, mode, &Workers::new(*jobs))?;
            if let Some(path) = path {
                let name = path.display().to_string();
                fs::write(path, report::to_json(&result)).map_err(io_error(&name))?;
            }
            out.write_all(report::summary(&result).as_bytes())
                .map_err(stdout_error)?;
            if result.consistent() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
    };
    Ok(code)
}

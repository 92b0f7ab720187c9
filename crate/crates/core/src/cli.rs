//! Command-line front end. Reports go to stdout as JSON (or DOT), one
//! document per invocation; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 internal failure, 2 input error, 3 tubular
//! diagram, 4 budget exhausted.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::absorder::{self, ExportFormat, SliceBudgets};
use crate::arith::IntMatrix;
use crate::diagram::{self, DiagramSpec, Signature, WeylType};
use crate::error::Error;
use crate::group::ExtendedWeylGroup;
use crate::hurwitz::{self, ConnectOutcome, Factorization};
use crate::rootsys;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TUBULAR: i32 = 3;
pub const EXIT_EXHAUSTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "extweyl",
    version,
    about = "Extended Weyl groups of domestic and wild type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a diagram by the signature of its form.
    Classify {
        /// Comma-separated arm lengths; empty for no arms.
        #[arg(long, allow_hyphen_values = true)]
        arms: String,
    },
    /// Enumerate projected roots up to a height bound.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        arms: String,
        #[arg(long, default_value_t = 10)]
        height: i64,
    },
    /// Random walks from the standard factorization, each connected back.
    HurwitzRoundtrip {
        #[arg(long, allow_hyphen_values = true)]
        arms: String,
        #[arg(long, default_value_t = 100)]
        walks: u64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Search for a braid word carrying one factorization to another.
    Connect {
        #[arg(long, allow_hyphen_values = true)]
        arms: String,
        /// JSON factorization file.
        #[arg(long)]
        from: PathBuf,
        /// JSON factorization file.
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Budgeted slice of the interval below the Coxeter transformation.
    Interval {
        #[arg(long, allow_hyphen_values = true)]
        arms: String,
        #[arg(long, default_value_t = 0)]
        moves: usize,
        #[arg(long, default_value_t = 2)]
        k_bound: i64,
        #[arg(long, default_value_t = 100_000)]
        node_cap: usize,
        /// `json` or `dot`.
        #[arg(long, default_value = "json")]
        format: String,
    },
}

/// A failed command: exit code and message for stderr. Partial output, if
/// any, has already been written.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedTubular => EXIT_TUBULAR,
            Error::Exhausted { .. } => EXIT_EXHAUSTED,
            Error::Overflow | Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_INTERNAL, e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn emit(out: &mut dyn Write, value: &impl Serialize) -> CmdResult {
    let text = serde_json::to_string(value).map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn group_for(arms: &str) -> std::result::Result<ExtendedWeylGroup, Failure> {
    Ok(ExtendedWeylGroup::new(DiagramSpec::parse_arms(arms)?)?)
}

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(rename = "type")]
    weyl_type: WeylType,
    signature: Signature,
    n: usize,
    gram: IntMatrix,
}

fn classify(arms: &str, out: &mut dyn Write) -> CmdResult {
    let spec = DiagramSpec::parse_arms(arms)?;
    let gram = diagram::build_gram(&spec);
    let signature = diagram::signature(&spec);
    let weyl_type = WeylType::from_signature(signature)
        .ok_or_else(|| Failure(EXIT_INTERNAL, format!("unexpected signature {signature:?}")))?;
    emit(
        out,
        &ClassifyReport {
            weyl_type,
            signature,
            n: spec.rank(),
            gram,
        },
    )
}

fn roots(arms: &str, height: i64, out: &mut dyn Write) -> CmdResult {
    let g = group_for(arms)?;
    emit(out, &rootsys::enumerate_projected(g.space(), height)?)
}

#[derive(Serialize)]
struct RoundtripReport {
    walks: u64,
    successes: u64,
    failures: u64,
    median_nodes: usize,
    word_lengths: Vec<usize>,
}

fn hurwitz_roundtrip(
    arms: &str,
    walks: u64,
    steps: usize,
    seed: u64,
    budget: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let g = group_for(arms)?;
    let standard = hurwitz::standard_factorization(&g, &g.default_ordering())?;
    let mut nodes = Vec::new();
    let mut word_lengths = Vec::new();
    let mut failures = 0;
    for i in 0..walks {
        let walk_seed = seed.wrapping_add(i);
        let (f, _) = hurwitz::random_walk(&g, &standard, steps, walk_seed)?;
        let outcome = hurwitz::connect(&g, &f, &standard, budget)?;
        nodes.push(outcome.nodes());
        match outcome.word() {
            Some(w) => word_lengths.push(w.len()),
            None => failures += 1,
        }
    }
    nodes.sort_unstable();
    let report = RoundtripReport {
        walks,
        successes: walks - failures,
        failures,
        median_nodes: nodes.get(nodes.len() / 2).copied().unwrap_or(0),
        word_lengths,
    };
    emit(out, &report)?;
    if failures > 0 {
        return Err(Failure(
            EXIT_EXHAUSTED,
            format!("{failures} of {walks} walks not connected"),
        ));
    }
    Ok(())
}

fn read_factorization(path: &PathBuf) -> std::result::Result<Factorization, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn connect(
    arms: &str,
    from: &PathBuf,
    to: &PathBuf,
    budget: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let g = group_for(arms)?;
    let f = read_factorization(from)?;
    let h = read_factorization(to)?;
    let outcome = hurwitz::connect(&g, &f, &h, budget)?;
    emit(out, &outcome)?;
    match outcome {
        ConnectOutcome::Connected { .. } => Ok(()),
        ConnectOutcome::Exhausted { nodes } => Err(Error::Exhausted { nodes }.into()),
    }
}

fn interval(arms: &str, budgets: SliceBudgets, format: &str, out: &mut dyn Write) -> CmdResult {
    let format: ExportFormat = format.parse()?;
    let g = group_for(arms)?;
    let slice = absorder::interval_slice(&g, &g.default_ordering(), budgets)?;
    writeln!(
        out,
        "{}",
        absorder::export_poset(&g, &slice, format)?.trim_end()
    )?;
    if !slice.complete {
        return Err(Failure(
            EXIT_EXHAUSTED,
            format!(
                "orbit ball truncated at {} nodes; slice is partial",
                budgets.node_cap
            ),
        ));
    }
    Ok(())
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify { arms } => classify(&arms, out),
        Command::Roots { arms, height } => roots(&arms, height, out),
        Command::HurwitzRoundtrip {
            arms,
            walks,
            steps,
            seed,
            budget,
        } => hurwitz_roundtrip(&arms, walks, steps, seed, budget, out),
        Command::Connect {
            arms,
            from,
            to,
            budget,
        } => connect(&arms, &from, &to, budget, out),
        Command::Interval {
            arms,
            moves,
            k_bound,
            node_cap,
            format,
        } => interval(
            &arms,
            SliceBudgets {
                move_budget: moves,
                k_bound,
                node_cap,
            },
            &format,
            out,
        ),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

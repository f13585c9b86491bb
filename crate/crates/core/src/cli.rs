//! Command-line front end.
//!
//! Exit codes: 0 when the command succeeded or the checked property holds,
//! 1 when a property is violated (disconnected metagraph, sweep failure),
//! 2 for input, usage and engine errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bwgraph::BWGraph;
use crate::error::Error;
use crate::meta::{self, SweepReport, Verdict};
use crate::paths::{self, DEFAULT_CAP};
use crate::permrev::SignedPermutation;
use crate::sampler;

pub const VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(
    name = "pressgame",
    version,
    about = "Pressing game on black-and-white graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Press vertices in order and print the resulting graph
    Press {
        graph: String,
        #[arg(required = true)]
        vertices: Vec<usize>,
    },
    /// Print the overlap graph of a signed permutation
    Overlap {
        #[arg(allow_hyphen_values = true)]
        perm: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Reversal distance of a permutation without hurdles
    Distance {
        #[arg(allow_hyphen_values = true)]
        perm: String,
    },
    /// List every successful pressing path
    Enumerate {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build the LCS metagraph and check connectivity
    Metagraph {
        graph: String,
        #[arg(long)]
        threshold: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check metagraph connectivity for every solvable linear graph
    VerifyLinear {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        threshold: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check metagraph connectivity for every solvable labelled graph
    VerifyGeneral {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        threshold: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the Metropolis-Hastings sampler over successful paths
    Sample {
        graph: String,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input: String,
    pub result: Value,
    pub wall_time_secs: f64,
    pub version: String,
}

impl RunReport {
    /// Pretty JSON with every object's keys sorted.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serialises");
        let mut s = serde_json::to_string_pretty(&v).expect("value serialises");
        s.push('\n');
        s
    }
}

pub fn write_report(r: &RunReport, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, r.to_json())
}

/// Reads a graph from a `linear:` shorthand or from a file in the graph
/// text format.
pub fn load_graph(source: &str) -> Result<BWGraph, CliError> {
    if source.trim_start().starts_with("linear:") {
        return Ok(BWGraph::parse(source)?);
    }
    let text =
        std::fs::read_to_string(source).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    Ok(BWGraph::parse(&text)?)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

struct Outcome {
    code: i32,
    input: String,
    result: Value,
}

/// Runs one command line (`argv[0]` is the program name). Human-readable
/// output goes to `out`, diagnostics to `err`.
pub fn run_command<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let started = Instant::now();
    let report_path = report_target(&cli.command);
    match dispatch(cli.command, out) {
        Ok(outcome) => {
            if let Some(path) = report_path {
                let report = RunReport {
                    command: argv[1..].to_vec(),
                    input: outcome.input,
                    result: outcome.result,
                    wall_time_secs: started.elapsed().as_secs_f64(),
                    version: VERSION.to_string(),
                };
                if let Err(e) = write_report(&report, &path) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return 2;
                }
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn report_target(c: &Command) -> Option<PathBuf> {
    match c {
        Command::Enumerate { report, .. }
        | Command::Metagraph { report, .. }
        | Command::VerifyLinear { report, .. }
        | Command::VerifyGeneral { report, .. }
        | Command::Sample { report, .. } => report.clone(),
        _ => None,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match command {
        Command::Press { graph, vertices } => {
            let g = load_graph(&graph)?;
            let h = g.apply_path(&vertices)?;
            write!(out, "{}", h.to_text()).map_err(io)?;
            Ok(Outcome {
                code: 0,
                input: graph,
                result: json!({ "graph": h.to_text() }),
            })
        }
        Command::Overlap { perm, dot } => {
            let p: SignedPermutation = perm.parse()?;
            let g = p.overlap_graph();
            write!(out, "{}", g.to_text()).map_err(io)?;
            if let Some(path) = dot {
                write_file(&path, &g.to_dot("overlap"))?;
            }
            Ok(Outcome {
                code: 0,
                input: perm,
                result: json!({ "graph": g.to_text() }),
            })
        }
        Command::Distance { perm } => {
            let p: SignedPermutation = perm.parse()?;
            let d = p.reversal_distance_hurdle_free()?;
            writeln!(out, "{d}").map_err(io)?;
            Ok(Outcome {
                code: 0,
                input: perm,
                result: json!({ "distance": d }),
            })
        }
        Command::Enumerate { graph, cap, .. } => {
            let g = load_graph(&graph)?;
            let ps = paths::enumerate_successful(&g, cap)?;
            write!(out, "{}", ps.to_text()).map_err(io)?;
            writeln!(
                out,
                "# {} successful paths, common length {}",
                ps.len(),
                ps.common_length()
            )
            .map_err(io)?;
            Ok(Outcome {
                code: 0,
                input: graph,
                result: json!({
                    "graph": g.to_text(),
                    "common_length": ps.common_length(),
                    "path_count": ps.len(),
                    "paths": meta::path_strings(&ps),
                }),
            })
        }
        Command::Metagraph {
            graph,
            threshold,
            cap,
            dot,
            ..
        } => {
            let g = load_graph(&graph)?;
            let ps = paths::enumerate_successful(&g, cap)?;
            let m = meta::build_metagraph(&ps, threshold)?;
            let connected = m.is_connected();
            let min = meta::min_connect_threshold(&ps)?;
            writeln!(
                out,
                "{} paths, common length {}, {} edges at threshold {threshold}\nconnected: {connected}\nmin connecting threshold: {min}",
                ps.len(),
                ps.common_length(),
                m.edges().len(),
            )
            .map_err(io)?;
            if let Some(path) = dot {
                write_file(&path, &m.to_dot())?;
            }
            let components: Vec<Vec<String>> = m
                .components()
                .into_iter()
                .map(|b| b.into_iter().map(|i| ps.paths()[i].to_string()).collect())
                .collect();
            Ok(Outcome {
                code: if connected { 0 } else { 1 },
                input: graph,
                result: json!({
                    "graph": g.to_text(),
                    "threshold": threshold,
                    "common_length": ps.common_length(),
                    "paths": meta::path_strings(&ps),
                    "edges": m.edges(),
                    "connected": connected,
                    "components": components,
                    "min_connect_threshold": min,
                    "verdict": if connected { "PASS" } else { "FAIL" },
                }),
            })
        }
        Command::VerifyLinear {
            n_max,
            threshold,
            cap,
            ..
        } => {
            if n_max == 0 {
                return Err(CliError::Usage("--n-max must be at least 1".into()));
            }
            let r = meta::verify_linear_family(n_max, threshold, cap);
            sweep_outcome(r, out, format!("linear n<={n_max}"))
        }
        Command::VerifyGeneral {
            n_max,
            threshold,
            cap,
            ..
        } => {
            if n_max == 0 {
                return Err(CliError::Usage("--n-max must be at least 1".into()));
            }
            if n_max > 6 {
                return Err(CliError::Usage(
                    "--n-max above 6 is beyond exhaustive reach".into(),
                ));
            }
            let r = meta::verify_general_family(n_max, threshold, cap);
            sweep_outcome(r, out, format!("general n<={n_max}"))
        }
        Command::Sample {
            graph,
            steps,
            burn_in,
            seed,
            cap,
            ..
        } => {
            let g = load_graph(&graph)?;
            let burn_in = burn_in.unwrap_or(steps / 10);
            if steps <= burn_in {
                return Err(CliError::Usage(format!(
                    "--steps ({steps}) must exceed --burn-in ({burn_in})"
                )));
            }
            let r = sampler::run_chain(&g, steps, burn_in, seed, cap)?;
            for (path, count) in &r.histogram {
                writeln!(out, "{count}\t{path}").map_err(io)?;
            }
            writeln!(
                out,
                "# seed {seed}, acceptance rate {:.4}, tv distance {}",
                r.acceptance_rate,
                r.tv_distance
                    .map(|t| format!("{t:.4}"))
                    .unwrap_or_else(|| "n/a".into())
            )
            .map_err(io)?;
            Ok(Outcome {
                code: 0,
                input: graph,
                result: serde_json::to_value(&r).expect("chain report serialises"),
            })
        }
    }
}

fn sweep_outcome(r: SweepReport, out: &mut dyn Write, input: String) -> Result<Outcome, CliError> {
    let verdict = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Incomplete => "INCOMPLETE",
    };
    writeln!(
        out,
        "{verdict}: {} solvable instances checked at threshold {}, {} failures, {} incomplete",
        r.instances_checked,
        r.threshold,
        r.failures.len(),
        r.incomplete.len()
    )
    .map_err(io)?;
    for f in &r.failures {
        writeln!(
            out,
            "counterexample:\n{}components: {:?}",
            f.graph, f.components
        )
        .map_err(io)?;
    }
    let code = match r.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Incomplete => 2,
    };
    Ok(Outcome {
        code,
        input,
        result: serde_json::to_value(&r).expect("sweep report serialises"),
    })
}

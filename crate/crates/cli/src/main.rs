use std::fs;
use std::io::Write as _;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cluster_cli::commands::{self, Emit, Semifield};
use cluster_cli::input::{parse_path, SeedInput};
use cluster_cli::session::DEFAULT_MAX_TERMS;
use cluster_cli::{server, CliError};
use cluster_core::exchange::Classification;
use cluster_core::pattern::{g_fan_svg, DEFAULT_SEED_BUDGET};

#[derive(Parser)]
#[command(name = "cluster", version, about = "Exact computations in cluster algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArgs {
    /// Exchange matrix as inline JSON: a matrix, {"b": ...}, {"bt": ..., "vars": ...} or {"b": ..., "data": ...}
    #[arg(long = "b", value_name = "JSON")]
    inline: Option<String>,
    /// File holding the same JSON
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Generalized mutation data {"r": [...], "z": [[...]]}
    #[arg(long, value_name = "JSON")]
    data: Option<String>,
}

impl MatrixArgs {
    fn load(&self) -> Result<SeedInput, CliError> {
        SeedInput::load(self.inline.as_deref(), self.matrix.as_deref(), self.data.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SemifieldArg {
    Principal,
    Free,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Seed,
    Vars,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate the initial seed along a path and print the seed document
    Mutate {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// One-based directions, e.g. 121 or 1,2,1
        #[arg(long, default_value = "")]
        path: String,
        #[arg(long, value_enum, default_value = "principal")]
        semifield: SemifieldArg,
        #[arg(long, value_enum, default_value = "seed")]
        emit: EmitArg,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Enumerate the exchange graph
    Enumerate {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Maximum number of seeds
        #[arg(long, default_value_t = DEFAULT_SEED_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
        /// Write the exchange graph in DOT format
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Write the rank-2 G-fan as SVG
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Write the full result as JSON
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Print the Dynkin type, "infinite" or "unknown (budget)"
    Classify {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Maximum number of matrices explored per block
        #[arg(long)]
        budget: Option<usize>,
        /// Print the classification as JSON
        #[arg(long)]
        json: bool,
    },
    /// Check invariants along random mutation walks
    Verify {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 20)]
        walks: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        max_terms: usize,
    },
    /// Replay embedded golden examples
    Examples {
        /// a2, b2, g2, a1xa1, gr25 or gca-b2
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// Serve the JSON session API
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
}

fn write(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Prints a line, ignoring a closed stdout.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Mutate {
            matrix,
            path,
            semifield,
            emit,
            max_terms,
        } => {
            let input = matrix.load()?;
            let path = parse_path(&path, input.n())?;
            let semifield = match semifield {
                SemifieldArg::Principal => Semifield::Principal,
                SemifieldArg::Free => Semifield::Free,
            };
            let emit = match emit {
                EmitArg::Seed => Emit::Seed,
                EmitArg::Vars => Emit::Vars,
            };
            out(&pretty(&commands::mutate(&input, &path, semifield, emit, max_terms)?));
        }
        Command::Enumerate {
            matrix,
            budget,
            max_terms,
            dot,
            svg,
            json,
        } => {
            let input = matrix.load()?;
            let r = commands::enumerate_graph(&input, budget, max_terms)?;
            if let Some(p) = &dot {
                write(p, &r.to_dot())?;
            }
            if let Some(p) = &svg {
                write(p, &g_fan_svg(&r)?)?;
            }
            if let Some(p) = &json {
                write(p, &pretty(&r.to_json()))?;
            }
            out(&commands::enumerate_summary(&r));
            if !r.complete {
                return Err(CliError::Budget(format!("stopped after {} seeds", r.seeds.len())));
            }
        }
        Command::Classify { matrix, budget, json } => {
            let c = commands::classify_matrix(&matrix.load()?, budget)?;
            if json {
                out(&pretty(&c));
            } else {
                out(&c.label());
            }
            if let Classification::Unknown { explored } = c {
                return Err(CliError::Budget(format!("{explored} matrices explored")));
            }
        }
        Command::Verify {
            matrix,
            walks,
            depth,
            seed,
            max_terms,
        } => {
            let report = commands::verify(&matrix.load()?, walks, depth, seed, max_terms)?;
            out(&pretty(&report));
            if !report.passed {
                return Err(CliError::Verification(format!("{} violations", report.violations.len())));
            }
        }
        Command::Examples { name, all } => {
            if name.is_none() && !all {
                return Err(CliError::Input("give an example name or --all".into()));
            }
            let reports = commands::examples(name.as_deref())?;
            let mut failed = 0;
            for r in &reports {
                if r.passed() {
                    out(&format!("PASS {} ({} comparisons)", r.name, r.checked));
                } else {
                    failed += 1;
                    out(&format!(
                        "FAIL {} ({} comparisons, {} mismatches)",
                        r.name,
                        r.checked,
                        r.mismatches.len()
                    ));
                    for m in &r.mismatches {
                        out(&format!("  - {m}"));
                    }
                }
            }
            if failed > 0 {
                return Err(CliError::Verification(format!("{failed} examples differ from the embedded tables")));
            }
        }
        Command::Serve { port, host, max_terms } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Input(e.to_string()))?;
            rt.block_on(server::serve(SocketAddr::new(host, port), max_terms))
                .map_err(|e| CliError::Input(format!("serve: {e}")))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

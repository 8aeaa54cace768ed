//! `sgcurv`: analyze positive-connected signed graphs through their
//! repelling Laplacian.
//!
//! Exit codes: 0 on success, 1 on errors (I/O, parsing, numerical), 2 when a
//! hypothesis is violated (epsilon at or beyond the consensus index without
//! `--force`, graphs outside an operation's domain).

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng as _, SeedableRng as _};
use serde_json::{json, Value};
use sgcurv::batch;
use sgcurv::bounds;
use sgcurv::curvature;
use sgcurv::ndarray::Array1;
use sgcurv::repelling;
use sgcurv::verify;
use sgcurv::{Error as CoreError, SignedGraph};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sgcurv",
    version,
    about = "Repelling-Laplacian analysis of signed graphs: consensus index, repelling costs, curvature, and inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis at one epsilon: cost matrix, simplex, curvature report.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Proceed even when epsilon is at or beyond the consensus index.
        #[arg(long)]
        force: bool,
    },
    /// Bisect the consensus index.
    Consensus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Curvature report at one epsilon.
    Curvature {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Epsilon sweep: spectral gap, resistance, curvature ranges per grid point.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "from")]
        eps_from: f64,
        #[arg(long = "to")]
        eps_to: f64,
        #[arg(long = "steps")]
        eps_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Inequality checks; accepts a file or a directory of edge lists.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Repelling consensus dynamics demonstration.
    Dynamics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the published-value reproduction and hardening suites.
    VerifyPaper {
        /// Only run criteria whose id contains this tag (e.g. c3, k4, heat).
        #[arg(long)]
        only: Option<String>,
        /// Seed for the randomized suites (default from SGCURV_SEED or 7).
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::EpsilonBeyondConsensus { .. }
        | CoreError::NotPositiveConnected
        | CoreError::Disconnected(_)
        | CoreError::NotBalanced
        | CoreError::NegativeCyclePair(..)
        | CoreError::TooSmall { .. } => 2,
        _ => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn hypothesis(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        Failure {
            code: exit_code_for(&err),
            message: err.to_string(),
        }
    }
}

fn read_graph(path: &Path) -> Result<(SignedGraph, String), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::error(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::error(format!("{} is not UTF-8", path.display())))?;
    let graph = sgcurv::parse_edge_list(&text)?;
    Ok((graph, report::digest(&bytes)))
}

fn emit(text: String, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::error(format!("cannot write {}: {e}", path.display()))),
    }
}

fn require_json(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::error(format!(
            "{command} supports only --format json"
        )));
    }
    Ok(())
}

fn env_seed() -> u64 {
    std::env::var("SGCURV_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(verify::corpus::DEFAULT_SEED)
}

fn cmd_analyze(
    input: &Path,
    epsilon: f64,
    tol_bisect: f64,
    out: Option<&Path>,
    format: Format,
    force: bool,
) -> Result<(), Failure> {
    require_json(format, "analyze")?;
    let (graph, digest) = read_graph(input)?;
    let consensus = repelling::consensus_index(&graph, tol_bisect)?;
    if !force {
        if let Some(eps0) = consensus.value.finite() {
            if epsilon >= eps0 {
                return Err(Failure::hypothesis(format!(
                    "epsilon exceeds consensus index {}",
                    report::sig6_string(eps0)
                )));
            }
        }
    }
    let analysis = if force {
        repelling::repelling_cost_matrix_forced(&graph, epsilon)?
    } else {
        let analysis = repelling::repelling_cost_matrix(&graph, epsilon)?;
        if graph.n() >= 2 {
            analysis.with_simplex()?
        } else {
            analysis
        }
    };
    let curvature_payload = if graph.n() >= 2 {
        match curvature::curvature_report(&analysis) {
            Ok(report) => report::curvature_payload(&report),
            Err(_) if force => Value::Null,
            Err(e) => return Err(e.into()),
        }
    } else {
        Value::Null
    };
    let payload = report::object(vec![
        ("analysis", report::analysis_payload(&analysis, &consensus)),
        ("curvature", curvature_payload),
        ("forced", json!(force)),
    ]);
    let command = format!(
        "analyze --input {} --epsilon {} --tol {}{}",
        input.display(),
        epsilon,
        tol_bisect,
        if force { " --force" } else { "" }
    );
    emit(
        report::to_json_string(&report::envelope(command, Some(digest), payload)),
        out,
    )
}

fn cmd_consensus(
    input: &Path,
    tol_bisect: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    require_json(format, "consensus")?;
    let (graph, digest) = read_graph(input)?;
    let consensus = repelling::consensus_index(&graph, tol_bisect)?;
    let command = format!("consensus --input {} --tol {}", input.display(), tol_bisect);
    emit(
        report::to_json_string(&report::envelope(
            command,
            Some(digest),
            report::consensus_payload(&consensus),
        )),
        out,
    )
}

fn cmd_curvature(
    input: &Path,
    epsilon: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    require_json(format, "curvature")?;
    let (graph, digest) = read_graph(input)?;
    let analysis = repelling::repelling_cost_matrix(&graph, epsilon)?;
    let report_data = curvature::curvature_report(&analysis)?;
    let command = format!(
        "curvature --input {} --epsilon {}",
        input.display(),
        epsilon
    );
    emit(
        report::to_json_string(&report::envelope(
            command,
            Some(digest),
            report::curvature_payload(&report_data),
        )),
        out,
    )
}

fn cmd_sweep(
    input: &Path,
    eps_from: f64,
    eps_to: f64,
    eps_steps: usize,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    if eps_steps == 0 || eps_to < eps_from {
        return Err(Failure::error(
            "sweep needs eps_from <= eps_to and at least one step",
        ));
    }
    let (graph, digest) = read_graph(input)?;
    let grid: Vec<f64> = if eps_steps == 1 {
        vec![eps_from]
    } else {
        (0..eps_steps)
            .map(|k| eps_from + (eps_to - eps_from) * k as f64 / (eps_steps - 1) as f64)
            .collect()
    };
    let rows = batch::sweep(&graph, &grid)?;
    let nondecreasing = if grid.len() >= 2 {
        repelling::monotonicity_check(&graph, &grid)?.nondecreasing()
    } else {
        true
    };
    match format {
        Format::Csv => emit(report::sweep_csv(&rows, nondecreasing), out),
        Format::Json => {
            let command = format!(
                "sweep --input {} --from {} --to {} --steps {}",
                input.display(),
                eps_from,
                eps_to,
                eps_steps
            );
            emit(
                report::to_json_string(&report::envelope(
                    command,
                    Some(digest),
                    report::sweep_rows_payload(&rows, nondecreasing),
                )),
                out,
            )
        }
    }
}

fn bounds_for_file(path: &Path, epsilon: f64) -> Result<Value, Failure> {
    let (graph, _) = read_graph(path)?;
    let reports = bounds::bound_suite(&graph, epsilon)?;
    Ok(Value::Array(
        reports.iter().map(report::bound_payload).collect(),
    ))
}

fn cmd_bounds(
    input: &Path,
    epsilon: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    require_json(format, "bounds")?;
    if input.is_dir() {
        let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
            .map_err(|e| Failure::error(format!("cannot read {}: {e}", input.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        let mut batch_reports = Vec::new();
        for path in entries {
            let reports = bounds_for_file(&path, epsilon)?;
            batch_reports.push(json!({
                "file": path.file_name().and_then(|s| s.to_str()),
                "reports": reports,
            }));
        }
        let command = format!("bounds --input {} --epsilon {}", input.display(), epsilon);
        return emit(
            report::to_json_string(&report::envelope(
                command,
                None,
                Value::Array(batch_reports),
            )),
            out,
        );
    }
    let (_, digest) = read_graph(input)?;
    let payload = bounds_for_file(input, epsilon)?;
    let command = format!("bounds --input {} --epsilon {}", input.display(), epsilon);
    emit(
        report::to_json_string(&report::envelope(command, Some(digest), payload)),
        out,
    )
}

fn cmd_dynamics(
    input: &Path,
    alpha: f64,
    beta: f64,
    steps: usize,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    require_json(format, "dynamics")?;
    let (graph, digest) = read_graph(input)?;
    // deterministic initial state from the suite seed
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(env_seed());
    let x0 = Array1::from_iter((0..graph.n()).map(|_| rng.random_range(-1.0..1.0)));
    let dynamics = bounds::simulate_repelling_dynamics(&graph, alpha, beta, &x0, steps)?;
    let command = format!(
        "dynamics --input {} --alpha {} --beta {} --steps {}",
        input.display(),
        alpha,
        beta,
        steps
    );
    let payload = report::object(vec![
        ("x0", json!(x0.to_vec())),
        ("dynamics", report::dynamics_payload(&dynamics)),
    ]);
    emit(
        report::to_json_string(&report::envelope(command, Some(digest), payload)),
        out,
    )
}

fn cmd_verify_paper(only: Option<&str>, seed: Option<u64>) -> Result<(), Failure> {
    let seed = seed.unwrap_or_else(env_seed);
    let reports = verify::run_all(seed, only)?;
    if reports.is_empty() {
        return Err(Failure::error("no criteria match the --only filter"));
    }
    let mut all_pass = true;
    for r in &reports {
        let gated = r.id != "k4-3neg-path";
        let verdict = if r.passed() {
            "PASS"
        } else if r.known_defect {
            "FAIL (documented defect: fails as published)"
        } else {
            "FAIL"
        };
        println!("== {} — {} [{} ms] {}", r.id, r.label, r.millis, verdict);
        for line in &r.lines {
            let mark = if !line.gating {
                "info"
            } else if line.pass {
                "pass"
            } else {
                "FAIL"
            };
            if line.tolerance.is_empty() {
                println!(
                    "   [{mark}] {}: expected {} | computed {}",
                    line.name, line.expected, line.computed
                );
            } else {
                println!(
                    "   [{mark}] {}: expected {} | computed {} | tol {}",
                    line.name, line.expected, line.computed, line.tolerance
                );
            }
        }
        if gated && !r.passed() {
            all_pass = false;
        }
    }
    let gated_total = reports.iter().filter(|r| r.id != "k4-3neg-path").count();
    let gated_pass = reports
        .iter()
        .filter(|r| r.id != "k4-3neg-path" && r.passed())
        .count();
    println!("summary: {gated_pass}/{gated_total} gated criteria pass (seed {seed})");
    if all_pass {
        Ok(())
    } else {
        Err(Failure::error("some gated criteria failed"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze {
            input,
            epsilon,
            tol,
            out,
            format,
            force,
        } => cmd_analyze(input, *epsilon, *tol, out.as_deref(), *format, *force),
        Command::Consensus {
            input,
            tol,
            out,
            format,
        } => cmd_consensus(input, *tol, out.as_deref(), *format),
        Command::Curvature {
            input,
            epsilon,
            out,
            format,
        } => cmd_curvature(input, *epsilon, out.as_deref(), *format),
        Command::Sweep {
            input,
            eps_from,
            eps_to,
            eps_steps,
            out,
            format,
        } => cmd_sweep(
            input,
            *eps_from,
            *eps_to,
            *eps_steps,
            out.as_deref(),
            *format,
        ),
        Command::Bounds {
            input,
            epsilon,
            out,
            format,
        } => cmd_bounds(input, *epsilon, out.as_deref(), *format),
        Command::Dynamics {
            input,
            alpha,
            beta,
            steps,
            out,
            format,
        } => cmd_dynamics(input, *alpha, *beta, *steps, out.as_deref(), *format),
        Command::VerifyPaper { only, seed } => cmd_verify_paper(only.as_deref(), *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

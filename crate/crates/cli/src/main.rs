//! `ainfo`: order-α information measures and capacities for finite
//! discrete channels.
//!
//! Exit codes: 0 on success, 2 on a validation or usage problem, 3 when a
//! solver hit its iteration cap before meeting the tolerance (the value is
//! still printed).

mod io;

use ainfo_core::{
    ac_mi, arimoto_mi_closed, exhaustive_joint_min, grid_min_over_simplex, lp_mi_def_ao, oracle,
    shannon_mi, sibson_mi_closed, AOConfig, AlgorithmId, AlphaParam, CapacityResult, GridSpec,
    Initialization, MIResult, SplitMix64,
};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

/// Orders this close to 1 dispatch to the Shannon-information routines.
const SHANNON_DISPATCH_GAP: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "ainfo",
    version,
    about = "Mutual information of order alpha and alpha-capacity for finite discrete channels",
    after_help = "Values are printed in nats with 9 digits after the decimal point."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    /// Sibson information (closed form)
    Sibson,
    /// Arimoto information (closed form)
    Arimoto,
    /// Augustin–Csiszár information (alternating optimization)
    Ac,
    /// Lapidoth–Pfister information (alternating optimization)
    Lp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    S1,
    Jo,
    C,
    Lp,
}

impl From<AlgoArg> for AlgorithmId {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::S1 => AlgorithmId::S1,
            AlgoArg::Jo => AlgorithmId::Jo,
            AlgoArg::C => AlgorithmId::C,
            AlgoArg::Lp => AlgorithmId::Lp,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitArg {
    Uniform,
    UniformJoint,
    InputTimesChannel,
}

impl InitArg {
    fn name(self) -> &'static str {
        match self {
            InitArg::Uniform => "uniform",
            InitArg::UniformJoint => "uniform-joint",
            InitArg::InputTimesChannel => "input-times-channel",
        }
    }
}

impl From<InitArg> for Initialization {
    fn from(i: InitArg) -> Self {
        match i {
            InitArg::Uniform => Initialization::Uniform,
            InitArg::UniformJoint => Initialization::UniformJoint,
            InitArg::InputTimesChannel => Initialization::InputTimesChannel,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a mutual information of order alpha for a channel and input
    Mi {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        alpha: f64,
        /// Channel file (JSON object or CSV matrix)
        #[arg(long)]
        channel: PathBuf,
        /// `uniform`, an inline comma list, or a file
        #[arg(long, default_value = "uniform")]
        input: String,
        /// Stopping tolerance on the objective change, in nats
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 1_000_000)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = InitArg::Uniform)]
        init: InitArg,
        /// Write the per-cycle objective trace CSV here (AO measures only)
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compute an alpha-capacity with one of the AO algorithms
    Capacity {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, value_enum, default_value_t = InitArg::Uniform)]
        init: InitArg,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 1_000_000)]
        max_iter: usize,
        /// Write the per-cycle objective trace CSV here
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a grid of capacity solves and write a CSV report
    Bench {
        /// Comma-separated list of orders
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', value_enum, required = true)]
        algos: Vec<AlgoArg>,
        #[arg(long, value_delimiter = ',', value_enum, default_values_t = [InitArg::Uniform])]
        inits: Vec<InitArg>,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 1_000_000)]
        max_iter: usize,
        /// Report CSV path
        #[arg(long)]
        out: PathBuf,
        /// Directory for per-run trace CSVs
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Generate a random channel file, deterministic per seed
    GenChannel {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Evaluate the brute-force grid reference for a measure
    Oracle {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value = "uniform")]
        input: String,
        #[arg(long, default_value_t = 60)]
        resolution: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 0.15)]
        shrink: f64,
    },
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::usage(message)
    }
}

impl From<ainfo_core::Error> for Failure {
    fn from(e: ainfo_core::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn order(alpha: f64) -> Result<AlphaParam, Failure> {
    AlphaParam::new(alpha).map_err(Into::into)
}

/// Nine decimal places, with values that round to zero shown as zero
/// rather than as a negative zero.
fn fmt9(value: f64) -> String {
    let s = format!("{value:.9}");
    if s == "-0.000000000" {
        s[1..].to_string()
    } else {
        s
    }
}

fn is_shannon_order(alpha: f64) -> bool {
    (alpha - 1.0).abs() < SHANNON_DISPATCH_GAP
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Mi {
            measure,
            alpha,
            channel,
            input,
            tol,
            max_iter,
            init,
            trace,
        } => {
            let ch = io::read_channel(&channel)?;
            let p = io::resolve_input(&input, ch.x_size())?;
            if is_shannon_order(alpha) {
                // every measure collapses to the order-1 information
                println!("{}", fmt9(shannon_mi(&p, &ch)?));
                return Ok(0);
            }
            let al = order(alpha)?;
            let cfg = AOConfig {
                tolerance: tol,
                max_iterations: max_iter,
                initialization: init.into(),
                record_trace: trace.is_some(),
            };
            let (value, solver_result): (f64, Option<MIResult>) = match measure {
                MeasureArg::Sibson => (sibson_mi_closed(al, &p, &ch)?, None),
                MeasureArg::Arimoto => (arimoto_mi_closed(al, &p, &ch)?, None),
                MeasureArg::Ac => {
                    let r = ac_mi(al, &p, &ch, &cfg)?;
                    (r.value, Some(r))
                }
                MeasureArg::Lp => {
                    let r = lp_mi_def_ao(al, &p, &ch, &cfg)?;
                    (r.value, Some(r))
                }
            };
            println!("{}", fmt9(value));
            if let Some(r) = &solver_result {
                if let (Some(path), Some(t)) = (&trace, &r.trace) {
                    io::write_trace(path, t)?;
                }
                if !r.proven_regime {
                    eprintln!(
                        "note: no convergence guarantee is known for this measure at order {alpha}; \
                         the monotone trace is the per-run evidence"
                    );
                }
                if !r.converged {
                    eprintln!("warning: iteration cap {max_iter} reached before tolerance {tol:e}");
                    return Ok(3);
                }
            }
            Ok(0)
        }
        Command::Capacity {
            algo,
            alpha,
            channel,
            init,
            tol,
            max_iter,
            trace,
        } => {
            if is_shannon_order(alpha) {
                return Err(Failure::usage(
                    "capacity solvers need an order away from 1".to_string(),
                ));
            }
            let ch = io::read_channel(&channel)?;
            let al = order(alpha)?;
            let algorithm: AlgorithmId = algo.into();
            if !algorithm.supports(al) {
                return Err(Failure::usage(format!(
                    "algorithm {algorithm} requires an order greater than 1, got {alpha}"
                )));
            }
            let cfg = AOConfig {
                tolerance: tol,
                max_iterations: max_iter,
                initialization: init.into(),
                record_trace: trace.is_some(),
            };
            let r = ainfo_core::run_capacity(algorithm, al, &ch, &cfg)?;
            println!("{} {}", fmt9(r.value), r.iterations);
            if let Some(path) = &trace {
                io::write_trace(path, &r.trace)?;
            }
            if !r.converged {
                eprintln!("warning: iteration cap {max_iter} reached before tolerance {tol:e}");
                return Ok(3);
            }
            Ok(0)
        }
        Command::Bench {
            alphas,
            algos,
            inits,
            channel,
            tol,
            max_iter,
            out,
            trace,
        } => run_bench(BenchJob {
            alphas,
            algos,
            inits,
            channel,
            tol,
            max_iter,
            out,
            trace_dir: trace,
        }),
        Command::GenChannel { x, y, seed, out, name } => {
            if x < 2 || y < 2 {
                return Err(Failure::usage("channel sizes must be at least 2".to_string()));
            }
            let mut rng = SplitMix64::new(seed);
            let ch = ainfo_core::random_channel(x, y, &mut rng);
            io::write_channel(&out, &ch, name)?;
            Ok(0)
        }
        Command::Oracle {
            measure,
            alpha,
            channel,
            input,
            resolution,
            levels,
            shrink,
        } => {
            let ch = io::read_channel(&channel)?;
            let p = io::resolve_input(&input, ch.x_size())?;
            let al = order(alpha)?;
            let spec = GridSpec {
                resolution,
                refinement_levels: levels,
                shrink_factor: shrink,
            };
            let value = match measure {
                MeasureArg::Sibson => {
                    grid_min_over_simplex(
                        |q| oracle::sibson_objective_direct(al, &p, &ch, q),
                        ch.y_size(),
                        &spec,
                    )?
                    .1
                }
                MeasureArg::Ac => {
                    grid_min_over_simplex(
                        |q| oracle::ac_objective_direct(al, &p, &ch, q),
                        ch.y_size(),
                        &spec,
                    )?
                    .1
                }
                MeasureArg::Lp => exhaustive_joint_min(al, &p, &ch, &spec)?,
                MeasureArg::Arimoto => {
                    return Err(Failure::usage(
                        "the grid oracle covers sibson, ac, and lp; the arimoto closed form \
                         is cross-checked through its entropy identity instead"
                            .to_string(),
                    ))
                }
            };
            println!("{}", fmt9(value));
            Ok(0)
        }
    }
}

struct BenchJob {
    alphas: Vec<f64>,
    algos: Vec<AlgoArg>,
    inits: Vec<InitArg>,
    channel: PathBuf,
    tol: f64,
    max_iter: usize,
    out: PathBuf,
    trace_dir: Option<PathBuf>,
}

struct BenchCell {
    algorithm: AlgorithmId,
    alpha: f64,
    init: InitArg,
}

struct BenchRow {
    cell: BenchCell,
    result: CapacityResult,
    wall_ms: f64,
}

fn bench_threads(cells: usize) -> Result<usize, Failure> {
    let cap = match std::env::var("AINFO_THREADS") {
        Ok(text) => text
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Failure::usage(format!("AINFO_THREADS must be a positive integer, got '{text}'")))?,
        Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok(cap.min(cells).max(1))
}

fn run_bench(job: BenchJob) -> Result<u8, Failure> {
    if job.alphas.is_empty() || job.algos.is_empty() || job.inits.is_empty() {
        return Err(Failure::usage("bench needs non-empty alpha, algo, and init lists".to_string()));
    }
    // fail on a bad stopping rule here rather than inside a worker
    AOConfig {
        tolerance: job.tol,
        max_iterations: job.max_iter,
        ..AOConfig::default()
    }
    .validate()?;
    let channel = io::read_channel(&job.channel)?;
    let mut cells = Vec::new();
    for &algo in &job.algos {
        for &alpha in &job.alphas {
            for &init in &job.inits {
                if is_shannon_order(alpha) {
                    return Err(Failure::usage(
                        "capacity solvers need an order away from 1".to_string(),
                    ));
                }
                let al = order(alpha)?;
                let algorithm: AlgorithmId = algo.into();
                if !algorithm.supports(al) {
                    return Err(Failure::usage(format!(
                        "algorithm {algorithm} requires an order greater than 1, got {alpha}"
                    )));
                }
                cells.push(BenchCell { algorithm, alpha, init });
            }
        }
    }

    if let Some(dir) = &job.trace_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
    }

    let record_trace = job.trace_dir.is_some();
    let threads = bench_threads(cells.len())?;
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<BenchRow>>> = Mutex::new((0..cells.len()).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= cells.len() {
                    break;
                }
                let cell = &cells[index];
                let cfg = AOConfig {
                    tolerance: job.tol,
                    max_iterations: job.max_iter,
                    initialization: cell.init.into(),
                    record_trace,
                };
                let alpha = AlphaParam::new(cell.alpha).expect("validated above");
                let started = Instant::now();
                let result = ainfo_core::run_capacity(cell.algorithm, alpha, &channel, &cfg)
                    .expect("cells validated above");
                let wall_ms = started.elapsed().as_secs_f64() * 1e3;
                rows.lock().unwrap()[index] = Some(BenchRow {
                    cell: BenchCell {
                        algorithm: cell.algorithm,
                        alpha: cell.alpha,
                        init: cell.init,
                    },
                    result,
                    wall_ms,
                });
            });
        }
    });

    let rows = rows.into_inner().unwrap();
    let mut report = String::from("algo,alpha,init,value,iterations,wall_ms\n");
    let mut any_unconverged = false;
    for row in rows.into_iter().map(|r| r.expect("all cells ran")) {
        report.push_str(&format!(
            "{},{},{},{},{},{:.3}\n",
            row.cell.algorithm,
            row.cell.alpha,
            row.cell.init.name(),
            fmt9(row.result.value),
            row.result.iterations,
            row.wall_ms
        ));
        any_unconverged |= !row.result.converged;
        if let Some(dir) = &job.trace_dir {
            let file = dir.join(format!(
                "trace_{}_a{}_{}.csv",
                row.cell.algorithm,
                row.cell.alpha,
                row.cell.init.name()
            ));
            io::write_trace(&file, &row.result.trace)?;
        }
    }
    std::fs::write(&job.out, report)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", job.out.display())))?;
    if any_unconverged {
        eprintln!("warning: at least one cell hit the iteration cap before its tolerance");
        return Ok(3);
    }
    Ok(0)
}

//! Command-line front end. Exit codes: 0 success, 1 usage error,
//! 2 data or validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::algorithms::{solve, validate_schedule, Algorithm, ScheduleFile, SolveOptions};
use crate::bench::{
    find_nonmonotone_seed, load_metrics, run_experiment, write_aggregates_csv, write_rows_csv,
    DatasetSpec, ExperimentConfig, SeedSpec,
};
use crate::error::{Error, Result};
use crate::graph::{load_graph, GraphFormat, MetricsMode, TravelMetrics, DEFAULT_TIME_FACTOR};
use crate::instance::{
    generate_instance, load_instance_with_graph, save_instance, DatasetInfo, GenParams,
    InstanceFile,
};
use crate::oracle::OracleLimits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jobroute",
    version,
    about = "Select and sequence jobs on a road network under time and budget constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random problem instance on a road network
    Gen(GenArgs),
    /// Solve an instance with one algorithm and write the schedule
    Run(RunArgs),
    /// Check a schedule against an instance
    Validate(ValidateArgs),
    /// Run a seeded experiment sweep and write CSV
    Bench(BenchArgs),
    /// Print statistics of a road network
    GraphInfo(GraphInfoArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Road network file
    #[arg(long)]
    pub graph: PathBuf,
    /// Road network file format
    #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Travel time per unit of travel cost
    #[arg(long, default_value_t = DEFAULT_TIME_FACTOR)]
    pub time_factor: f64,
    /// Number of jobs
    #[arg(long)]
    pub jobs: usize,
    /// Seed of the generator
    #[arg(long)]
    pub seed: u64,
    /// Earliest job start time
    #[arg(long, default_value_t = 1.0)]
    pub t_min: f64,
    /// Latest job start time
    #[arg(long, default_value_t = 5000.0)]
    pub t_max: f64,
    /// Smallest job utility
    #[arg(long, default_value_t = 9000.0)]
    pub util_min: f64,
    /// Largest job utility
    #[arg(long, default_value_t = 12000.0)]
    pub util_max: f64,
    /// Shortest job duration
    #[arg(long, default_value_t = 10.0)]
    pub dur_min: f64,
    /// Longest job duration
    #[arg(long, default_value_t = 200.0)]
    pub dur_max: f64,
    /// Travel budget [default: 100 x mean edge weight]
    #[arg(long)]
    pub budget: Option<f64>,
    /// Label of the worker's start POI [default: drawn from the seed]
    #[arg(long)]
    pub worker_start: Option<u64>,
    /// Working window as START:END [default: the start-time range]
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    /// Dataset name recorded in the instance [default: graph file stem]
    #[arg(long)]
    pub name: Option<String>,
    /// Output instance file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance file written by `gen`
    #[arg(long)]
    pub instance: PathBuf,
    /// Road network file, overriding the one recorded in the instance
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Format of --graph
    #[arg(long, value_enum, requires = "graph")]
    pub format: Option<GraphFormat>,
    /// Shortest-path table strategy
    #[arg(long, value_enum, default_value_t = MetricsMode::OnDemand)]
    pub metrics: MetricsMode,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Algorithm to run
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    /// Seed of the random baseline
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Best-first picks only from the next batch of equal start times
    #[arg(long)]
    pub alg1_strict_batch: bool,
    /// Nearest neighbour may commit jobs with negative priority
    #[arg(long)]
    pub nn_allow_negative: bool,
    /// Largest instance the oracle accepts
    #[arg(long, default_value_t = OracleLimits::default().max_jobs)]
    pub oracle_max_jobs: usize,
    /// Output schedule file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Schedule file written by `run`
    #[arg(long)]
    pub schedule: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Experiment config (TOML); replaces the shorthand flags
    #[arg(long, conflicts_with_all = ["graph", "jobs", "algos", "seeds", "seed_list", "name", "time_factor"])]
    pub config: Option<PathBuf>,
    /// Road network file
    #[arg(long, required_unless_present = "config")]
    pub graph: Option<PathBuf>,
    /// Road network file format
    #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
    pub format: GraphFormat,
    /// Dataset name in the CSV [default: graph file stem]
    #[arg(long)]
    pub name: Option<String>,
    /// Comma-separated job counts
    #[arg(long, value_delimiter = ',', default_values_t = [200, 400, 800])]
    pub jobs: Vec<usize>,
    /// Comma-separated algorithms
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = Algorithm::HEURISTICS)]
    pub algos: Vec<Algorithm>,
    /// Number of seeds, run as 0..N
    #[arg(long, default_value_t = 30, conflicts_with = "seed_list")]
    pub seeds: u64,
    /// Comma-separated explicit seeds
    #[arg(long, value_delimiter = ',')]
    pub seed_list: Option<Vec<u64>>,
    /// Travel time per unit of travel cost
    #[arg(long, default_value_t = DEFAULT_TIME_FACTOR)]
    pub time_factor: f64,
    /// Shortest-path table strategy
    #[arg(long, value_enum)]
    pub metrics: Option<MetricsMode>,
    /// Per-run CSV [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Aggregate CSV (mean and std per job count and algorithm)
    #[arg(long)]
    pub aggregate_out: Option<PathBuf>,
    /// Run cells one after another
    #[arg(long)]
    pub serial: bool,
    /// Record wall-clock milliseconds per run
    #[arg(long)]
    pub timing: bool,
    /// Search for a seed where this algorithm earns less with more jobs
    #[arg(long, value_enum)]
    pub find_nonmonotone: Option<Algorithm>,
    /// Smaller job count of the search
    #[arg(long, default_value_t = 200, requires = "find_nonmonotone")]
    pub k_small: usize,
    /// Larger job count of the search
    #[arg(long, default_value_t = 400, requires = "find_nonmonotone")]
    pub k_large: usize,
    /// Seeds tried by the search
    #[arg(long, default_value_t = 1000, requires = "find_nonmonotone")]
    pub max_tries: u64,
}

#[derive(Debug, Args)]
pub struct GraphInfoArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected START:END, got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad window bound {t:?}: {e}"))
    };
    Ok((num(a)?, num(b)?))
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            EXIT_DATA
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen(a) => gen(a, out),
        Command::Run(a) => run_algo(a, out),
        Command::Validate(a) => validate(a, out),
        Command::Bench(a) => bench(a, out),
        Command::GraphInfo(a) => graph_info(a, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn file_stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".to_string())
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<i32> {
    let net = Arc::new(load_graph(&a.graph.graph, a.graph.format)?);
    let metrics = Arc::new(TravelMetrics::new(
        net,
        a.time_factor,
        MetricsMode::OnDemand,
    )?);
    let params = GenParams {
        t_range: (a.t_min, a.t_max),
        util_range: (a.util_min, a.util_max),
        duration_range: (a.dur_min, a.dur_max),
        budget: a.budget,
        window: a.window,
        worker_start: a.worker_start,
    };
    let dataset = DatasetInfo {
        name: a.name.unwrap_or_else(|| file_stem(&a.graph.graph)),
        path: Some(a.graph.graph.to_string_lossy().into_owned()),
        format: Some(a.graph.format),
    };
    let inst = generate_instance(&metrics, a.jobs, &params, a.seed, dataset)?;
    match &a.out {
        Some(p) => save_instance(&inst, p)?,
        None => emit(out, None, &InstanceFile::from_instance(&inst).to_json())?,
    }
    log::info!(
        "generated {} jobs, budget {}, start poi {}",
        inst.jobs().len(),
        inst.worker().budget,
        inst.network().label(inst.worker().start_poi)
    );
    Ok(EXIT_OK)
}

fn load(a: &InstanceArgs) -> Result<crate::instance::ProblemInstance> {
    let graph = match (&a.graph, a.format) {
        (Some(p), f) => Some((p.as_path(), f.unwrap_or(GraphFormat::EdgeList))),
        (None, _) => None,
    };
    Ok(load_instance_with_graph(&a.instance, graph, a.metrics)?)
}

fn run_algo(a: RunArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = load(&a.input)?;
    let opts = SolveOptions {
        seed: a.seed,
        alg1_strict_batch: a.alg1_strict_batch,
        nn_allow_negative: a.nn_allow_negative,
        oracle: OracleLimits {
            max_jobs: a.oracle_max_jobs,
            ..OracleLimits::default()
        },
    };
    let schedule = solve(&inst, a.algo, &opts)?;
    let file = ScheduleFile::new(&inst, &schedule, a.algo.name(), a.seed);
    emit(out, a.out.as_deref(), &file.to_json())?;
    log::info!(
        "{}: {} jobs, utility {}, travel cost {}",
        a.algo,
        schedule.jobs_performed(),
        schedule.total_utility,
        schedule.total_travel_cost
    );
    Ok(report_violations(validate_schedule(&inst, &schedule)))
}

fn report_violations(r: std::result::Result<(), Vec<crate::algorithms::Violation>>) -> i32 {
    match r {
        Ok(()) => EXIT_OK,
        Err(vs) => {
            for v in &vs {
                eprintln!("violation: {v}");
            }
            EXIT_DATA
        }
    }
}

fn validate(a: ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = load(&a.input)?;
    let schedule = ScheduleFile::read(&a.schedule)?.to_schedule(inst.network())?;
    let code = report_violations(validate_schedule(&inst, &schedule));
    if code == EXIT_OK {
        writeln!(
            out,
            "valid: {} jobs, utility {}, travel cost {}",
            schedule.jobs_performed(),
            schedule.total_utility,
            schedule.total_travel_cost
        )
        .map_err(|e| Error::io("<stdout>", e))?;
    }
    Ok(code)
}

fn bench_config(a: &BenchArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(p) => ExperimentConfig::read(p)?,
        None => {
            let graph = a
                .graph
                .clone()
                .expect("clap requires --graph without --config");
            let seeds = match &a.seed_list {
                Some(list) => SeedSpec::List(list.clone()),
                None => SeedSpec::Count(a.seeds),
            };
            let mut cfg = ExperimentConfig::new(
                DatasetSpec {
                    path: graph,
                    format: a.format,
                    name: a.name.clone(),
                },
                seeds,
            );
            cfg.job_counts = a.jobs.clone();
            cfg.algorithms = a.algos.clone();
            cfg.time_factor = a.time_factor;
            cfg
        }
    };
    if let Some(m) = a.metrics {
        cfg.metrics = m;
    }
    if a.out.is_some() {
        cfg.output = a.out.clone();
    }
    if a.aggregate_out.is_some() {
        cfg.aggregate_output = a.aggregate_out.clone();
    }
    if a.serial {
        cfg.parallel = false;
    }
    if a.timing {
        cfg.timing = true;
    }
    cfg.check()?;
    Ok(cfg)
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = bench_config(&a)?;
    let stdout_err = |e| Error::io("<stdout>", e);
    if let Some(algo) = a.find_nonmonotone {
        let metrics = load_metrics(&cfg)?;
        let found = find_nonmonotone_seed(&cfg, &metrics, algo, a.k_small, a.k_large, a.max_tries)?;
        match found {
            Some(f) => writeln!(
                out,
                "seed={} k_small={} utility_small={} k_large={} utility_large={}",
                f.seed, a.k_small, f.small_utility, a.k_large, f.large_utility
            )
            .map_err(stdout_err)?,
            None => writeln!(out, "not found after {} tries", a.max_tries).map_err(stdout_err)?,
        }
        return Ok(EXIT_OK);
    }
    let result = run_experiment(&cfg)?;
    if cfg.output.is_none() {
        write_rows_csv(&result.rows, &mut *out)?;
    }
    if cfg.aggregate_output.is_none() {
        let mut buf = Vec::new();
        write_aggregates_csv(&result.aggregates, &mut buf)?;
        for line in String::from_utf8_lossy(&buf).lines() {
            log::info!("{line}");
        }
    }
    Ok(EXIT_OK)
}

fn graph_info(a: GraphInfoArgs, out: &mut dyn Write) -> Result<i32> {
    let net = load_graph(&a.graph.graph, a.graph.format)?;
    let report = net.load_report();
    writeln!(
        out,
        "n={}\nm={}\ndensity={}\naverage_degree={}\ncomponents={}\nmean_edge_weight={}\nself_loops_dropped={}\nduplicates_collapsed={}",
        net.poi_count(),
        net.edge_count(),
        net.density(),
        net.average_degree(),
        net.component_count(),
        net.mean_edge_weight(),
        report.self_loops_dropped,
        report.duplicates_collapsed,
    )
    .map_err(|e| Error::io("<stdout>", e))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn window_parser() {
        assert_eq!(parse_window("1:5000"), Ok((1.0, 5000.0)));
        assert!(parse_window("15000").is_err());
        assert!(parse_window("a:2").is_err());
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(run(["jobroute", "graph-info", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["jobroute"]), EXIT_USAGE);
    }
}

//! `pfsp` — multi-objective permutation flow shop solver.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use pfsp_core::harness::{self, ExperimentConfig};
use pfsp_core::io::{self, MatrixLayout, RunRecord};
use pfsp_core::metrics::{compute_d1_d2, ReferenceSet};
use pfsp_core::model::{Instance, ObjectiveSet};
use pfsp_core::oracle;
use pfsp_core::search::{run_with_progress, Algorithm, SearchConfig};
use pfsp_core::Time;

/// Environment variable naming the default output directory used when
/// `--out` is omitted.
const OUT_DIR_ENV: &str = "PFSP_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "pfsp",
    version,
    about = "Multi-objective permutation flow shop scheduling: PILS and MOS solvers, \
             exact oracle, quality metrics and a benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file path.
    #[arg(long)]
    instance: PathBuf,
    /// Read the processing-time matrix as machine-major (classic Taillard
    /// layout) instead of job-major.
    #[arg(long)]
    machine_major: bool,
    /// Tardiness factor used to generate due dates when the instance file
    /// carries none: d_j = floor(tf * sum_k p_jk).
    #[arg(long)]
    tf: Option<f64>,
}

impl InstanceArgs {
    fn load(&self) -> Result<Instance<Time>> {
        let layout = if self.machine_major {
            MatrixLayout::MachineMajor
        } else {
            MatrixLayout::JobMajor
        };
        let parsed = io::read_instance_file::<Time>(&self.instance, layout)?;
        if parsed.due_dates_present {
            if self.tf.is_some() {
                eprintln!(
                    "note: {} already defines due dates; --tf ignored",
                    self.instance.display()
                );
            }
            return Ok(parsed.instance);
        }
        match self.tf {
            Some(tf) => Ok(io::generate_due_dates(&parsed.instance, tf, 0)?),
            None => Ok(parsed.instance),
        }
    }

    fn stem(&self) -> String {
        self.instance
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".into())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one seeded search and write the result record.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// pils or mos.
        #[arg(long)]
        algorithm: Algorithm,
        /// Evaluation budget; defaults to the size tier (1e5 up to 10 jobs,
        /// 1e6 up to 20, 5e6 up to 50, 1e7 beyond).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated criteria, e.g. cmax,tsum or cmax,csum_avg,tsum_avg.
        #[arg(long, default_value = "cmax,tsum")]
        objectives: String,
        /// Print evaluations and archive size every N evaluations.
        #[arg(long)]
        progress: Option<u64>,
        /// Output record path; defaults to a file under PFSP_OUT_DIR when
        /// that variable is set, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the exact Pareto front by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "cmax,tsum")]
        objectives: String,
        /// Refuse instances with more jobs than this.
        #[arg(long, default_value_t = oracle::DEFAULT_LIMIT)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the D1/D2 regret of a reference set against an approximation.
    Metrics {
        /// Approximation set: run record or tabular vector file.
        #[arg(long)]
        approx: PathBuf,
        /// Reference set: run record or tabular vector file.
        #[arg(long)]
        reference: PathBuf,
    },
    /// Evaluate uniformly random permutations and export the vectors plus
    /// a 2-D histogram.
    Sample {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "cmax,tsum")]
        objectives: String,
        /// Histogram resolution per axis.
        #[arg(long, default_value_t = 100)]
        bins: usize,
        /// Vector output path; the histogram lands next to it with a .hist
        /// extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a multi-run experiment described by a JSON config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Report path; defaults to experiment-report.json under
        /// PFSP_OUT_DIR when that variable is set, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a uniform random instance file (no due dates).
    Generate {
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        machines: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Processing times are drawn uniformly from 1..=pmax.
        #[arg(long, default_value_t = 99)]
        pmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> std::process::ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            instance,
            algorithm,
            budget,
            seed,
            objectives,
            progress,
            out,
        } => solve(instance, algorithm, budget, seed, &objectives, progress, out),
        Command::Oracle {
            instance,
            objectives,
            limit,
            out,
        } => run_oracle(instance, &objectives, limit, out),
        Command::Metrics { approx, reference } => metrics(&approx, &reference),
        Command::Sample {
            instance,
            count,
            seed,
            objectives,
            bins,
            out,
        } => sample(instance, count, seed, &objectives, bins, out),
        Command::Experiment { config, out } => experiment(&config, out),
        Command::Generate {
            jobs,
            machines,
            seed,
            pmax,
            out,
        } => generate(jobs, machines, seed, pmax, out),
    }
}

fn solve(
    instance_args: InstanceArgs,
    algorithm: Algorithm,
    budget: Option<u64>,
    seed: u64,
    objectives: &str,
    progress: Option<u64>,
    out: Option<PathBuf>,
) -> Result<()> {
    let instance = instance_args.load()?;
    let objectives = ObjectiveSet::parse_list(objectives)?;
    let budget = budget.unwrap_or_else(|| harness::default_budget(instance.jobs()));
    let config = SearchConfig::new(algorithm, budget, seed, objectives)?;
    let result = run_with_progress(&instance, &config, progress, &mut |p| {
        eprintln!("{} evaluations, archive size {}", p.evaluations, p.archive_size);
    })?;
    let record = RunRecord::from_search(&instance_args.stem(), &instance, &config, &result);
    eprintln!(
        "{}: {} evaluations, {} episodes, archive size {}, {} ms",
        algorithm,
        result.evaluations,
        result.episodes.len(),
        result.archive.len(),
        result.elapsed.as_millis()
    );
    let default_name = format!("{}-{}-s{}.json", instance_args.stem(), algorithm, seed);
    emit_record(&record, out, &default_name)
}

fn run_oracle(
    instance_args: InstanceArgs,
    objectives: &str,
    limit: usize,
    out: Option<PathBuf>,
) -> Result<()> {
    let instance = instance_args.load()?;
    let objectives = ObjectiveSet::parse_list(objectives)?;
    let started = Instant::now();
    let front = oracle::exact_front(&instance, &objectives, limit)?;
    let evaluations = (1..=instance.jobs() as u64)
        .try_fold(1u64, u64::checked_mul)
        .unwrap_or(u64::MAX);
    let record = RunRecord::from_front(
        &instance_args.stem(),
        &instance,
        &objectives,
        &front,
        evaluations,
        started.elapsed().as_millis() as u64,
    );
    eprintln!(
        "oracle: {} permutations, front size {}",
        evaluations,
        front.len()
    );
    let default_name = format!("{}-oracle.json", instance_args.stem());
    emit_record(&record, out, &default_name)
}

fn metrics(approx: &Path, reference: &Path) -> Result<()> {
    let approx_vectors = io::read_vector_file(approx)?;
    let reference_vectors = io::read_vector_file(reference)?;
    let reference = ReferenceSet::new(reference_vectors)
        .with_context(|| format!("reference set {}", reference.display()))?;
    let report = compute_d1_d2(&approx_vectors, &reference)?;
    println!("D1 = {}", report.d1);
    println!("D2 = {}", report.d2);
    Ok(())
}

fn sample(
    instance_args: InstanceArgs,
    count: u64,
    seed: u64,
    objectives: &str,
    bins: usize,
    out: Option<PathBuf>,
) -> Result<()> {
    let instance = instance_args.load()?;
    let objectives = ObjectiveSet::parse_list(objectives)?;
    let output = harness::random_sample(&instance, count, seed, &objectives, bins)?;
    let default_name = format!("{}-sample-s{}.tsv", instance_args.stem(), seed);
    match resolve_out(out, &default_name) {
        Some(path) => {
            io::write_vectors_tabular(&path, &output.vectors)?;
            let hist_path = path.with_extension("hist");
            std::fs::write(&hist_path, output.histogram.to_tabular())
                .with_context(|| hist_path.display().to_string())?;
            eprintln!(
                "wrote {} vectors to {} and histogram to {}",
                output.vectors.len(),
                path.display(),
                hist_path.display()
            );
        }
        None => print!("{}", io::vectors_to_tabular(&output.vectors)),
    }
    Ok(())
}

fn experiment(config_path: &Path, out: Option<PathBuf>) -> Result<()> {
    let config = ExperimentConfig::from_file(config_path)?;
    let report = harness::run_experiment(&config)?;
    eprintln!("{}", report.mean_table());
    match resolve_out(out, "experiment-report.json") {
        Some(path) => {
            std::fs::write(&path, report.to_json()?)
                .with_context(|| path.display().to_string())?;
            eprintln!("wrote report to {}", path.display());
        }
        None => print!("{}", report.to_json()?),
    }
    Ok(())
}

fn generate(
    jobs: usize,
    machines: usize,
    seed: u64,
    pmax: u32,
    out: Option<PathBuf>,
) -> Result<()> {
    let instance = io::generate_instance::<Time>(jobs, machines, pmax, seed)?;
    // no due-date section: downstream consumers synthesize them via --tf
    match resolve_out(out, &format!("rand-n{jobs}-m{machines}-s{seed}.txt")) {
        Some(path) => {
            io::write_instance_file(&path, &instance, false)?;
            eprintln!("wrote instance to {}", path.display());
        }
        None => print!("{}", io::serialize_instance(&instance, false)),
    }
    Ok(())
}

fn emit_record(record: &RunRecord, out: Option<PathBuf>, default_name: &str) -> Result<()> {
    match resolve_out(out, default_name) {
        Some(path) => {
            io::write_run_record(&path, record)?;
            eprintln!("wrote record to {}", path.display());
        }
        None => print!("{}", io::run_record_json(record)?),
    }
    Ok(())
}

/// `--out` wins; otherwise `$PFSP_OUT_DIR/<default_name>`; otherwise stdout.
fn resolve_out(out: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    if out.is_some() {
        return out;
    }
    std::env::var_os(OUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(default_name))
}

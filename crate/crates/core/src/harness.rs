//! Experiment driver: seeded multi-run comparisons, descent-cost
//! measurement and random-sampling analysis.
//!
//! An experiment executes `R` runs per (instance, algorithm) with seeds
//! `1..=R`. Per instance the reference front is the exact one when the
//! instance is small enough to enumerate, otherwise the non-dominated
//! union of every run's archive, frozen into the report after all runs of
//! that instance finish. Each run's D1/D2 is computed against that one
//! reference, so values within an instance are directly comparable.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::archive::ParetoArchive;
use crate::error::{Error, Result};
use crate::io::{read_instance_file, MatrixLayout};
use crate::metrics::{build_reference, compute_d1_d2};
use crate::model::{Criterion, Instance, ObjectiveSet};
use crate::neighborhoods::NeighborhoodKind;
use crate::oracle;
use crate::search::{
    intensify_to_local_optimum, random_permutation, run, Algorithm, SearchConfig, SearchResult,
};
use crate::{Time, TimeValue};

/// Evaluation budget tier by instance size: desk-scale 1e5 for small
/// synthetic instances, then the benchmark convention of one million
/// evaluations for 20 jobs, five million around 50 and ten million at 100.
pub fn default_budget(jobs: usize) -> u64 {
    if jobs <= 10 {
        100_000
    } else if jobs <= 20 {
        1_000_000
    } else if jobs <= 50 {
        5_000_000
    } else {
        10_000_000
    }
}

fn default_runs() -> u32 {
    20
}

fn default_objectives() -> Vec<Criterion> {
    vec![Criterion::Cmax, Criterion::Tsum]
}

fn default_oracle_limit() -> usize {
    oracle::DEFAULT_LIMIT
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Pils, Algorithm::Mos]
}

/// Experiment description as loaded from a JSON config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Instance file paths.
    pub instances: Vec<String>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    /// Seeded runs per (instance, algorithm); seeds are 1..=runs.
    #[serde(default = "default_runs")]
    pub runs: u32,
    /// Evaluation budget for every run; omitted means the size tier.
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default = "default_objectives")]
    pub objectives: Vec<Criterion>,
    /// Generates due dates for instances that lack them.
    #[serde(default)]
    pub tardiness_factor: Option<f64>,
    /// Instances up to this size use the exact front as reference.
    #[serde(default = "default_oracle_limit")]
    pub oracle_limit: usize,
    #[serde(default)]
    pub layout: MatrixLayout,
    /// When set, also measure mean evaluations-to-local-optimum per
    /// instance from this many random starts.
    #[serde(default)]
    pub descent_samples: Option<u32>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::File {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}

/// An instance together with the name used in reports.
#[derive(Debug, Clone)]
pub struct NamedInstance<T = Time> {
    pub id: String,
    pub instance: Instance<T>,
}

/// One run's contribution to a cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub seed: u64,
    pub evaluations: u64,
    pub archive_size: usize,
    pub d1: f64,
    pub d2: f64,
}

/// All runs of one algorithm on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub instance: String,
    pub algorithm: Algorithm,
    pub runs: Vec<RunMetrics>,
    pub mean_d1: f64,
    pub mean_d2: f64,
}

/// Per-instance summary including the frozen reference front.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub id: String,
    pub jobs: usize,
    pub machines: usize,
    pub budget: u64,
    /// "oracle" or "union".
    pub reference_source: String,
    pub reference: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    /// Wall-clock timestamp; the only field excluded from reproducibility.
    pub generated_at_unix_ms: u64,
    pub runs_per_cell: u32,
    pub objectives: Vec<Criterion>,
    pub instances: Vec<InstanceSummary>,
    pub cells: Vec<CellReport>,
    /// Present when the config requested descent-cost measurement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_costs: Option<Vec<DescentCostRow>>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Result<String> {
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        Ok(json)
    }

    pub fn cell(&self, instance: &str, algorithm: Algorithm) -> Option<&CellReport> {
        self.cells
            .iter()
            .find(|c| c.instance == instance && c.algorithm == algorithm)
    }

    /// Tab-separated mean table: one row per instance, D1 then D2 means per
    /// algorithm.
    pub fn mean_table(&self) -> String {
        let algorithms: Vec<Algorithm> = {
            let mut seen = Vec::new();
            for cell in &self.cells {
                if !seen.contains(&cell.algorithm) {
                    seen.push(cell.algorithm);
                }
            }
            seen
        };
        let mut header = vec!["instance".to_string()];
        for a in &algorithms {
            header.push(format!("d1_{}", a));
        }
        for a in &algorithms {
            header.push(format!("d2_{}", a));
        }
        let mut out = header.join("\t");
        out.push('\n');
        for summary in &self.instances {
            let mut row = vec![summary.id.clone()];
            for a in &algorithms {
                let cell = self.cell(&summary.id, *a);
                row.push(cell.map_or("-".into(), |c| format!("{:.4}", c.mean_d1)));
            }
            for a in &algorithms {
                let cell = self.cell(&summary.id, *a);
                row.push(cell.map_or("-".into(), |c| format!("{:.4}", c.mean_d2)));
            }
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Load the configured instances (generating due dates where needed) and
/// run the experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let objectives = ObjectiveSet::new(config.objectives.clone())?;
    let mut instances = Vec::with_capacity(config.instances.len());
    for path in &config.instances {
        let parsed = read_instance_file::<Time>(path, config.layout)?;
        let id = Path::new(path)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.clone());
        let instance = if parsed.due_dates_present {
            parsed.instance
        } else if let Some(tf) = config.tardiness_factor {
            crate::io::generate_due_dates(&parsed.instance, tf, 0)?
        } else {
            parsed.instance
        };
        instances.push(NamedInstance { id, instance });
    }
    let mut report = run_experiment_instances(
        &instances,
        &config.algorithms,
        config.runs,
        config.budget,
        &objectives,
        config.oracle_limit,
    )?;
    if let Some(samples) = config.descent_samples {
        report.descent_costs = Some(measure_descent_cost(&instances, &objectives, samples, 1)?);
    }
    Ok(report)
}

/// Experiment core over already-loaded instances.
pub fn run_experiment_instances<T: TimeValue>(
    instances: &[NamedInstance<T>],
    algorithms: &[Algorithm],
    runs: u32,
    budget: Option<u64>,
    objectives: &ObjectiveSet,
    oracle_limit: usize,
) -> Result<ExperimentReport> {
    if runs < 1 {
        return Err(Error::InvalidInput("need at least one run".into()));
    }
    if instances.is_empty() || algorithms.is_empty() {
        return Err(Error::InvalidInput(
            "need at least one instance and one algorithm".into(),
        ));
    }
    let mut summaries = Vec::new();
    let mut cells = Vec::new();
    for named in instances {
        let jobs = named.instance.jobs();
        let instance_budget = budget.unwrap_or_else(|| default_budget(jobs));

        let mut results: Vec<(Algorithm, u64, SearchResult<T>)> = Vec::new();
        for &algorithm in algorithms {
            for seed in 1..=u64::from(runs) {
                let config = SearchConfig::new(algorithm, instance_budget, seed, objectives.clone())
                    .map_err(|e| run_error(&named.id, algorithm, seed, e))?;
                let result = run(&named.instance, &config)
                    .map_err(|e| run_error(&named.id, algorithm, seed, e))?;
                results.push((algorithm, seed, result));
            }
        }

        // freeze the reference only after every run of this instance
        let (reference_source, reference) = if jobs <= oracle_limit {
            let front = oracle::exact_front_real(&named.instance, objectives, oracle_limit)?;
            ("oracle".to_string(), build_reference(&[], Some(&front))?)
        } else {
            let inputs: Vec<Vec<Vec<f64>>> = results
                .iter()
                .map(|(_, _, r)| archive_real_vectors(&r.archive, objectives, jobs))
                .collect();
            ("union".to_string(), build_reference(&inputs, None)?)
        };

        for &algorithm in algorithms {
            let mut run_metrics = Vec::new();
            for (run_algorithm, seed, result) in &results {
                if *run_algorithm != algorithm {
                    continue;
                }
                let approx = archive_real_vectors(&result.archive, objectives, jobs);
                let report = compute_d1_d2(&approx, &reference)
                    .map_err(|e| run_error(&named.id, algorithm, *seed, e))?;
                run_metrics.push(RunMetrics {
                    seed: *seed,
                    evaluations: result.evaluations,
                    archive_size: result.archive.len(),
                    d1: report.d1,
                    d2: report.d2,
                });
            }
            let count = run_metrics.len() as f64;
            let mean_d1 = run_metrics.iter().map(|r| r.d1).sum::<f64>() / count;
            let mean_d2 = run_metrics.iter().map(|r| r.d2).sum::<f64>() / count;
            cells.push(CellReport {
                instance: named.id.clone(),
                algorithm,
                runs: run_metrics,
                mean_d1,
                mean_d2,
            });
        }

        summaries.push(InstanceSummary {
            id: named.id.clone(),
            jobs,
            machines: named.instance.machines(),
            budget: instance_budget,
            reference_source,
            reference: reference.vectors().to_vec(),
        });
    }
    Ok(ExperimentReport {
        generated_at_unix_ms: now_ms(),
        runs_per_cell: runs,
        objectives: objectives.criteria().to_vec(),
        instances: summaries,
        cells,
        descent_costs: None,
    })
}

fn archive_real_vectors<T: TimeValue>(
    archive: &ParetoArchive<T>,
    objectives: &ObjectiveSet,
    jobs: usize,
) -> Vec<Vec<f64>> {
    archive
        .iter()
        .map(|e| objectives.to_real(&e.objectives, jobs))
        .collect()
}

fn run_error(instance: &str, algorithm: Algorithm, seed: u64, source: Error) -> Error {
    Error::Run {
        instance: instance.to_string(),
        algorithm: algorithm.name().to_string(),
        seed,
        source: Box::new(source),
    }
}

fn now_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Mean evaluations until a locally optimal solution is reached from a
/// random start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentCostRow {
    pub instance: String,
    pub jobs: usize,
    pub machines: usize,
    pub samples: u32,
    pub mean_evaluations: f64,
}

/// For each instance, descend from `samples` random starts with an
/// unbounded budget and report the mean neighbor-evaluation count.
pub fn measure_descent_cost<T: TimeValue>(
    instances: &[NamedInstance<T>],
    objectives: &ObjectiveSet,
    samples: u32,
    seed: u64,
) -> Result<Vec<DescentCostRow>> {
    if samples < 1 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let mut rows = Vec::with_capacity(instances.len());
    for named in instances {
        let jobs = named.instance.jobs();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut total = 0u64;
        for _ in 0..samples {
            let start = random_permutation(jobs, &mut rng);
            let mut archive = ParetoArchive::new();
            let outcome = intensify_to_local_optimum(
                &named.instance,
                &start,
                objectives,
                &NeighborhoodKind::ALL,
                &mut archive,
                &mut rng,
                u64::MAX,
            )?;
            debug_assert!(outcome.locally_optimal);
            total += outcome.evaluations;
        }
        rows.push(DescentCostRow {
            instance: named.id.clone(),
            jobs,
            machines: named.instance.machines(),
            samples,
            mean_evaluations: total as f64 / f64::from(samples),
        });
    }
    Ok(rows)
}

/// Fixed-bin 2-D histogram over the first two objectives of a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram2d {
    pub bins: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Row-major `bins × bins` counts, x-bin major.
    pub counts: Vec<u64>,
}

impl Histogram2d {
    /// Build over the observed range of the first two dimensions. A
    /// degenerate range maps every value to bin 0.
    pub fn build(vectors: &[Vec<f64>], bins: usize) -> Result<Self> {
        if bins < 1 {
            return Err(Error::InvalidInput("need at least one bin".into()));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidInput("cannot bin an empty sample".into()));
        }
        if vectors.iter().any(|v| v.len() < 2) {
            return Err(Error::InvalidInput(
                "histogram needs at least two objectives".into(),
            ));
        }
        let x_min = vectors.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
        let x_max = vectors.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
        let y_min = vectors.iter().map(|v| v[1]).fold(f64::INFINITY, f64::min);
        let y_max = vectors.iter().map(|v| v[1]).fold(f64::NEG_INFINITY, f64::max);
        let mut counts = vec![0u64; bins * bins];
        for v in vectors {
            let x = bin_index(v[0], x_min, x_max, bins);
            let y = bin_index(v[1], y_min, y_max, bins);
            counts[x * bins + y] += 1;
        }
        Ok(Self {
            bins,
            x_min,
            x_max,
            y_min,
            y_max,
            counts,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Tab-separated rows `x_center y_center count` with a comment header,
    /// ready for heatmap plotting.
    pub fn to_tabular(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# x range [{}, {}], y range [{}, {}], {} x {} bins\n",
            self.x_min, self.x_max, self.y_min, self.y_max, self.bins, self.bins
        ));
        let x_step = (self.x_max - self.x_min) / self.bins as f64;
        let y_step = (self.y_max - self.y_min) / self.bins as f64;
        for x in 0..self.bins {
            for y in 0..self.bins {
                let x_center = self.x_min + (x as f64 + 0.5) * x_step;
                let y_center = self.y_min + (y as f64 + 0.5) * y_step;
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    x_center,
                    y_center,
                    self.counts[x * self.bins + y]
                ));
            }
        }
        out
    }
}

fn bin_index(value: f64, min: f64, max: f64, bins: usize) -> usize {
    if max <= min {
        return 0;
    }
    let fraction = (value - min) / (max - min);
    ((fraction * bins as f64) as usize).min(bins - 1)
}

/// Random-sampling output: all evaluated vectors plus their histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleOutput {
    pub vectors: Vec<Vec<f64>>,
    pub histogram: Histogram2d,
}

/// Evaluate `count` uniform random permutations.
pub fn random_sample<T: TimeValue>(
    instance: &Instance<T>,
    count: u64,
    seed: u64,
    objectives: &ObjectiveSet,
    bins: usize,
) -> Result<SampleOutput> {
    if count < 1 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = Vec::with_capacity(count.min(1 << 24) as usize);
    for _ in 0..count {
        let perm = random_permutation(instance.jobs(), &mut rng);
        let vector = crate::model::decode_and_evaluate(instance, &perm, objectives)?;
        vectors.push(objectives.to_real(&vector, instance.jobs()));
    }
    let histogram = Histogram2d::build(&vectors, bins)?;
    Ok(SampleOutput { vectors, histogram })
}

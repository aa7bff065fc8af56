//! Instance files, due-date synthesis, run records and tabular exports.
//!
//! # Instance format
//!
//! Line 1 holds `n m`; lines 2..n+1 hold `m` whitespace-separated
//! non-negative integers each, row `j` being the processing times of job
//! `j` on machines 1..m (job-major). An optional trailing section
//!
//! ```text
//! duedates:
//! d1 d2 ... dn
//! ```
//!
//! supplies due dates; without it every `d_j` is zero and the parse result
//! is flagged accordingly. The classic machine-major layout (`m` rows of
//! `n` entries) is supported behind [`MatrixLayout::MachineMajor`] and
//! transposed on read.
//!
//! # Run records
//!
//! Results round-trip through a self-describing JSON document holding the
//! configuration echo, the final archive (1-based permutations, real-valued
//! objective vectors) and per-run statistics. Vector sets additionally
//! export as flat tab-separated text, one vector per row, for plotting.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dominates_components, Criterion, Instance, ObjectiveSet, Permutation};
use crate::search::{SearchConfig, SearchResult};
use crate::TimeValue;

/// Orientation of the processing-time matrix in a file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixLayout {
    #[default]
    JobMajor,
    MachineMajor,
}

/// Parse result: the instance plus whether the file carried due dates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance<T = crate::Time> {
    pub instance: Instance<T>,
    pub due_dates_present: bool,
}

pub fn read_instance_file<T: TimeValue>(
    path: impl AsRef<Path>,
    layout: MatrixLayout,
) -> Result<ParsedInstance<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text, layout)
}

pub fn parse_instance<T: TimeValue>(text: &str, layout: MatrixLayout) -> Result<ParsedInstance<T>> {
    let end_line = text.lines().count() + 1;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing 'n m' header"))?;
    let header_fields = parse_integers(header, header_line)?;
    if header_fields.len() != 2 {
        return Err(parse_err(header_line, "header must hold exactly 'n m'"));
    }
    let n = header_fields[0];
    let m = header_fields[1];
    if n < 1 || m < 1 {
        return Err(parse_err(header_line, "job and machine counts must be positive"));
    }
    if n > 100_000 || m > 100_000 {
        return Err(parse_err(header_line, "implausible job or machine count"));
    }
    let n = n as usize;
    let m = m as usize;

    let (rows, row_len) = match layout {
        MatrixLayout::JobMajor => (n, m),
        MatrixLayout::MachineMajor => (m, n),
    };
    let mut matrix: Vec<Vec<i64>> = Vec::with_capacity(rows);
    for row in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_err(
                end_line,
                &format!("unexpected end of file: expected {} matrix rows, found {}", rows, row),
            )
        })?;
        let values = parse_integers(line, line_no)?;
        if values.len() != row_len {
            return Err(parse_err(
                line_no,
                &format!("expected {} values, found {}", row_len, values.len()),
            ));
        }
        if let Some(&bad) = values.iter().find(|&&v| v < 0) {
            return Err(parse_err(line_no, &format!("negative processing time {}", bad)));
        }
        matrix.push(values);
    }
    let p = match layout {
        MatrixLayout::JobMajor => matrix,
        MatrixLayout::MachineMajor => transpose(&matrix, n, m),
    };

    let mut due_dates = vec![0i64; n];
    let mut due_dates_present = false;
    if let Some((line_no, line)) = lines.next() {
        if !line.eq_ignore_ascii_case("duedates:") {
            return Err(parse_err(
                line_no,
                &format!("expected 'duedates:' or end of file, found '{}'", line),
            ));
        }
        let (d_line_no, d_line) = lines
            .next()
            .ok_or_else(|| parse_err(line_no + 1, "missing due-date row"))?;
        let values = parse_integers(d_line, d_line_no)?;
        if values.len() != n {
            return Err(parse_err(
                d_line_no,
                &format!("expected {} due dates, found {}", n, values.len()),
            ));
        }
        if let Some(&bad) = values.iter().find(|&&v| v < 0) {
            return Err(parse_err(d_line_no, &format!("negative due date {}", bad)));
        }
        due_dates = values;
        due_dates_present = true;
        if let Some((extra_line, extra)) = lines.next() {
            return Err(parse_err(
                extra_line,
                &format!("unexpected trailing content '{}'", extra),
            ));
        }
    }

    let convert_row = |row: &[i64]| -> Result<Vec<T>> {
        row.iter()
            .map(|&v| {
                T::from_i64(v).ok_or_else(|| {
                    Error::InvalidInput(format!("value {} overflows the time scalar", v))
                })
            })
            .collect()
    };
    let p: Vec<Vec<T>> = p.iter().map(|r| convert_row(r)).collect::<Result<_>>()?;
    let d: Vec<T> = convert_row(&due_dates)?;
    Ok(ParsedInstance {
        instance: Instance::new(p, d)?,
        due_dates_present,
    })
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_integers(line: &str, line_no: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| parse_err(line_no, &format!("invalid integer '{}'", tok)))
        })
        .collect()
}

fn transpose(matrix: &[Vec<i64>], n: usize, m: usize) -> Vec<Vec<i64>> {
    (0..n).map(|j| (0..m).map(|k| matrix[k][j]).collect()).collect()
}

/// Canonical job-major writer. With `due_dates` the due-date section is
/// emitted and `parse(serialize(inst))` reproduces the instance exactly;
/// without it the file parses as lacking due dates (synthesized instances
/// leave them to a later `--tf`).
pub fn serialize_instance<T: TimeValue>(instance: &Instance<T>, due_dates: bool) -> String {
    let mut out = format!("{} {}\n", instance.jobs(), instance.machines());
    for job in 0..instance.jobs() {
        let row: Vec<String> = instance
            .processing_row(job)
            .iter()
            .map(|v| v.to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if due_dates {
        out.push_str("duedates:\n");
        let d: Vec<String> = instance.due_dates().iter().map(|v| v.to_string()).collect();
        out.push_str(&d.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_instance_file<T: TimeValue>(
    path: impl AsRef<Path>,
    instance: &Instance<T>,
    due_dates: bool,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, serialize_instance(instance, due_dates)).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

/// Synthesize due dates as `d_j = floor(TF · Σ_k p_jk)`.
///
/// The scheme is deterministic; `seed` is accepted for forward
/// compatibility with randomized schemes and currently unused.
pub fn generate_due_dates<T: TimeValue>(
    instance: &Instance<T>,
    tardiness_factor: f64,
    seed: u64,
) -> Result<Instance<T>> {
    let _ = seed;
    if tardiness_factor <= 0.0 || tardiness_factor.is_nan() {
        return Err(Error::InvalidInput(
            "tardiness factor must be positive".into(),
        ));
    }
    let d = (0..instance.jobs())
        .map(|job| {
            let total = instance
                .total_processing(job)
                .to_f64()
                .expect("processing sum representable as f64");
            let due = (tardiness_factor * total).floor();
            T::from_f64(due).ok_or_else(|| {
                Error::InvalidInput(format!("due date {} overflows the time scalar", due))
            })
        })
        .collect::<Result<Vec<T>>>()?;
    instance.with_due_dates(d)
}

/// Uniform random instance: processing times drawn from `1..=p_max`,
/// no due dates.
pub fn generate_instance<T: TimeValue>(
    jobs: usize,
    machines: usize,
    p_max: u32,
    seed: u64,
) -> Result<Instance<T>> {
    if jobs < 1 || machines < 1 {
        return Err(Error::InvalidInput(
            "need at least one job and one machine".into(),
        ));
    }
    if p_max < 1 {
        return Err(Error::InvalidInput(
            "maximum processing time must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (0..jobs)
        .map(|_| {
            (0..machines)
                .map(|_| {
                    let v = rng.random_range(1..=p_max);
                    T::from_u32(v).ok_or_else(|| {
                        Error::InvalidInput(format!("value {} overflows the time scalar", v))
                    })
                })
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let d = vec![T::zero(); jobs];
    Instance::new(p, d)
}

/// One archived solution as written to disk: 1-based job sequence and
/// real-valued objectives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub permutation: Vec<usize>,
    pub objectives: Vec<f64>,
}

/// Self-describing result of a single run (or of the oracle).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub jobs: usize,
    pub machines: usize,
    pub algorithm: String,
    pub seed: u64,
    pub budget: u64,
    pub objectives: Vec<Criterion>,
    pub evaluations: u64,
    /// Evaluations per completed intensification episode.
    pub episodes: Vec<u64>,
    pub started_at_unix_ms: u64,
    pub elapsed_ms: u64,
    pub archive: Vec<RecordEntry>,
}

impl RunRecord {
    /// Assemble the record for a finished search run.
    pub fn from_search<T: TimeValue>(
        instance_id: &str,
        instance: &Instance<T>,
        config: &SearchConfig,
        result: &SearchResult<T>,
    ) -> Self {
        let archive = result
            .archive
            .iter()
            .map(|e| RecordEntry {
                permutation: e.permutation.to_one_based(),
                objectives: config.objectives.to_real(&e.objectives, instance.jobs()),
            })
            .collect();
        RunRecord {
            instance: instance_id.to_string(),
            jobs: instance.jobs(),
            machines: instance.machines(),
            algorithm: config.algorithm.name().to_string(),
            seed: config.seed,
            budget: config.max_evaluations,
            objectives: config.objectives.criteria().to_vec(),
            evaluations: result.evaluations,
            episodes: result.episodes.clone(),
            started_at_unix_ms: unix_ms(),
            elapsed_ms: result.elapsed.as_millis() as u64,
            archive,
        }
    }

    /// Assemble a record for an oracle front; `evaluations` is the number
    /// of permutations enumerated.
    pub fn from_front<T: TimeValue>(
        instance_id: &str,
        instance: &Instance<T>,
        objectives: &ObjectiveSet,
        front: &[(Permutation, crate::model::ObjectiveVector<T>)],
        evaluations: u64,
        elapsed_ms: u64,
    ) -> Self {
        let archive = front
            .iter()
            .map(|(perm, vector)| RecordEntry {
                permutation: perm.to_one_based(),
                objectives: objectives.to_real(vector, instance.jobs()),
            })
            .collect();
        RunRecord {
            instance: instance_id.to_string(),
            jobs: instance.jobs(),
            machines: instance.machines(),
            algorithm: "oracle".to_string(),
            seed: 0,
            budget: evaluations,
            objectives: objectives.criteria().to_vec(),
            evaluations,
            episodes: Vec::new(),
            started_at_unix_ms: unix_ms(),
            elapsed_ms,
            archive,
        }
    }

    pub fn archive_vectors(&self) -> Vec<Vec<f64>> {
        self.archive.iter().map(|e| e.objectives.clone()).collect()
    }

    /// Boundary invariants: permutations are 1-based bijections of the
    /// job count and archive vectors are mutually non-dominated and
    /// pairwise distinct.
    pub fn validate(&self) -> Result<()> {
        for entry in &self.archive {
            if entry.permutation.len() != self.jobs {
                return Err(Error::Validation(format!(
                    "archived permutation has {} jobs, record says {}",
                    entry.permutation.len(),
                    self.jobs
                )));
            }
            Permutation::from_one_based(&entry.permutation)
                .map_err(|e| Error::Validation(e.to_string()))?;
            if entry.objectives.len() != self.objectives.len() {
                return Err(Error::Validation(
                    "archived vector dimension differs from the objective set".into(),
                ));
            }
        }
        for (i, a) in self.archive.iter().enumerate() {
            for b in &self.archive[i + 1..] {
                if a.objectives == b.objectives
                    || dominates_components(&a.objectives, &b.objectives)
                    || dominates_components(&b.objectives, &a.objectives)
                {
                    return Err(Error::Validation(format!(
                        "archive violates mutual non-dominance: {:?} vs {:?}",
                        a.objectives, b.objectives
                    )));
                }
            }
        }
        Ok(())
    }
}

fn unix_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// The record's on-disk JSON form.
pub fn run_record_json(record: &RunRecord) -> Result<String> {
    let mut json = serde_json::to_string_pretty(record)?;
    json.push('\n');
    Ok(json)
}

pub fn write_run_record(path: impl AsRef<Path>, record: &RunRecord) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, run_record_json(record)?).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

/// Read and validate a run record.
pub fn read_run_record(path: impl AsRef<Path>) -> Result<RunRecord> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    let record: RunRecord = serde_json::from_str(&text)?;
    record.validate()?;
    Ok(record)
}

/// Flat tab-separated text: one vector per row. `#`-prefixed lines are
/// comments.
pub fn vectors_to_tabular(vectors: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for v in vectors {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

pub fn write_vectors_tabular(path: impl AsRef<Path>, vectors: &[Vec<f64>]) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, vectors_to_tabular(vectors)).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_vectors_tabular(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut vectors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| parse_err(i + 1, &format!("invalid number '{}'", tok)))
            })
            .collect::<Result<Vec<f64>>>()?;
        vectors.push(row);
    }
    Ok(vectors)
}

/// Load a vector set from either a run-record JSON file (its archive
/// vectors) or a flat tabular file, sniffed by the leading character.
pub fn read_vector_file(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        let record: RunRecord = serde_json::from_str(&text)?;
        record.validate()?;
        Ok(record.archive_vectors())
    } else {
        parse_vectors_tabular(&text)
    }
}

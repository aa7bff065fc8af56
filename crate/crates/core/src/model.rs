//! Problem definition, permutation decoding and objective evaluation.
//!
//! An [`Instance`] fixes `n` jobs and `m` machines with a non-negative
//! processing-time matrix and one due date per job. A solution is a
//! [`Permutation`] of the jobs, decoded into an active schedule by starting
//! every operation as early as possible; all supported criteria are
//! functions of the resulting per-job completion times.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Time, TimeValue};

/// Immutable flow shop problem: processing times `p[job][machine]` and due
/// dates `d[job]`. Jobs and machines are 0-based in memory; file formats and
/// user-facing output are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<T = Time> {
    p: Vec<Vec<T>>,
    d: Vec<T>,
}

impl<T: TimeValue> Instance<T> {
    pub fn new(p: Vec<Vec<T>>, d: Vec<T>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidInstance("at least one job required".into()));
        }
        let m = p[0].len();
        if m == 0 {
            return Err(Error::InvalidInstance(
                "at least one machine required".into(),
            ));
        }
        for (j, row) in p.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInstance(format!(
                    "job {} has {} processing times, expected {}",
                    j + 1,
                    row.len(),
                    m
                )));
            }
            if row.iter().any(|&v| v < T::zero()) {
                return Err(Error::InvalidInstance(format!(
                    "job {} has a negative processing time",
                    j + 1
                )));
            }
        }
        if d.len() != p.len() {
            return Err(Error::InvalidInstance(format!(
                "{} due dates for {} jobs",
                d.len(),
                p.len()
            )));
        }
        if d.iter().any(|&v| v < T::zero()) {
            return Err(Error::InvalidInstance("negative due date".into()));
        }
        Ok(Self { p, d })
    }

    pub fn jobs(&self) -> usize {
        self.p.len()
    }

    pub fn machines(&self) -> usize {
        self.p[0].len()
    }

    pub fn processing_time(&self, job: usize, machine: usize) -> T {
        self.p[job][machine]
    }

    pub fn processing_row(&self, job: usize) -> &[T] {
        &self.p[job]
    }

    /// Total processing time of one job over all machines.
    pub fn total_processing(&self, job: usize) -> T {
        self.p[job].iter().copied().sum()
    }

    pub fn due_date(&self, job: usize) -> T {
        self.d[job]
    }

    pub fn due_dates(&self) -> &[T] {
        &self.d
    }

    /// Same processing times with replaced due dates.
    pub fn with_due_dates(&self, d: Vec<T>) -> Result<Self> {
        Self::new(self.p.clone(), d)
    }
}

/// A job sequence: position `i` holds the job scheduled `i`-th on every
/// machine. Always a bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &job in &order {
            if job >= n {
                return Err(Error::InvalidPermutation(format!(
                    "job index {} out of range for {} jobs",
                    job, n
                )));
            }
            if seen[job] {
                return Err(Error::InvalidPermutation(format!(
                    "job {} appears twice",
                    job
                )));
            }
            seen[job] = true;
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn job_at(&self, position: usize) -> usize {
        self.0[position]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [usize] {
        &mut self.0
    }

    /// 1-based copy for file formats and display.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&j| j + 1).collect()
    }

    /// Parse a 1-based job sequence as found in files.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        let shifted = order
            .iter()
            .map(|&j| {
                j.checked_sub(1).ok_or_else(|| {
                    Error::InvalidPermutation("job index 0 in a 1-based sequence".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shifted)
    }
}

/// One of the five supported minimization criteria.
///
/// The averaged criteria are evaluated as the raw sums (`n`-scaled) so that
/// objective arithmetic stays integral; the division by `n` happens when
/// values cross the real-valued boundary (metrics, files, display). Since
/// `n` is constant per instance this changes no dominance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Maximum completion time (makespan).
    Cmax,
    /// Sum of completion times.
    Csum,
    /// Total tardiness.
    Tsum,
    /// Average completion time, `C_sum / n`.
    CsumAvg,
    /// Average tardiness, `T_sum / n`.
    TsumAvg,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::Cmax,
        Criterion::Csum,
        Criterion::Tsum,
        Criterion::CsumAvg,
        Criterion::TsumAvg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Cmax => "cmax",
            Criterion::Csum => "csum",
            Criterion::Tsum => "tsum",
            Criterion::CsumAvg => "csum_avg",
            Criterion::TsumAvg => "tsum_avg",
        }
    }

    /// Whether the exposed real value divides the internal one by `n`.
    pub fn averaged(self) -> bool {
        matches!(self, Criterion::CsumAvg | Criterion::TsumAvg)
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cmax" | "c_max" => Ok(Criterion::Cmax),
            "csum" | "c_sum" => Ok(Criterion::Csum),
            "tsum" | "t_sum" => Ok(Criterion::Tsum),
            "csum_avg" | "csum/n" => Ok(Criterion::CsumAvg),
            "tsum_avg" | "tsum/n" => Ok(Criterion::TsumAvg),
            other => Err(Error::InvalidObjectiveSet(format!(
                "unknown criterion '{}' (expected one of cmax, csum, tsum, csum_avg, tsum_avg)",
                other
            ))),
        }
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered selection of at least two distinct criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveSet {
    criteria: Vec<Criterion>,
}

impl ObjectiveSet {
    pub fn new(criteria: Vec<Criterion>) -> Result<Self> {
        if criteria.len() < 2 {
            return Err(Error::InvalidObjectiveSet(
                "at least two criteria required".into(),
            ));
        }
        for (i, c) in criteria.iter().enumerate() {
            if criteria[..i].contains(c) {
                return Err(Error::InvalidObjectiveSet(format!(
                    "duplicate criterion '{}'",
                    c
                )));
            }
        }
        Ok(Self { criteria })
    }

    /// The bi-objective setting: makespan and total tardiness.
    pub fn cmax_tsum() -> Self {
        Self {
            criteria: vec![Criterion::Cmax, Criterion::Tsum],
        }
    }

    /// The tri-objective setting: makespan, average completion time and
    /// average tardiness.
    pub fn cmax_csum_avg_tsum_avg() -> Self {
        Self {
            criteria: vec![Criterion::Cmax, Criterion::CsumAvg, Criterion::TsumAvg],
        }
    }

    /// Parse a comma-separated list such as `cmax,tsum`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let criteria = s
            .split(',')
            .filter(|part| !part.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(criteria)
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn len(&self) -> usize {
        self.criteria.len()
    }

    pub fn is_empty(&self) -> bool {
        self.criteria.is_empty()
    }

    /// Expose an internal vector as real values, dividing the averaged
    /// criteria by the job count.
    pub fn to_real<T: TimeValue>(&self, vector: &ObjectiveVector<T>, jobs: usize) -> Vec<f64> {
        debug_assert_eq!(vector.len(), self.criteria.len());
        self.criteria
            .iter()
            .zip(vector.values())
            .map(|(c, &v)| {
                let v = v.to_f64().expect("objective value representable as f64");
                if c.averaged() {
                    v / jobs as f64
                } else {
                    v
                }
            })
            .collect()
    }
}

impl std::fmt::Display for ObjectiveSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<&str> = self.criteria.iter().map(|c| c.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// A point in objective space, compared by Pareto dominance (minimization).
/// Equality is component-wise; there is deliberately no `Ord`, since the
/// dominance relation is partial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectiveVector<T = Time> {
    values: Vec<T>,
}

impl<T: TimeValue> ObjectiveVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Strict Pareto dominance: no worse everywhere, better somewhere.
    ///
    /// Panics if the dimensions differ; use [`ObjectiveVector::try_dominates`]
    /// when the operands come from an unvalidated boundary.
    pub fn dominates(&self, other: &Self) -> bool {
        assert_eq!(self.len(), other.len(), "objective dimension mismatch");
        dominates_components(&self.values, &other.values)
    }

    /// Dimension-checked variant of [`ObjectiveVector::dominates`].
    pub fn try_dominates(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(dominates_components(&self.values, &other.values))
    }

    /// No worse in every component (allows equality).
    pub fn weakly_dominates(&self, other: &Self) -> bool {
        assert_eq!(self.len(), other.len(), "objective dimension mismatch");
        weakly_dominates_components(&self.values, &other.values)
    }
}

pub(crate) fn dominates_components<V: PartialOrd>(a: &[V], b: &[V]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

pub(crate) fn weakly_dominates_components<V: PartialOrd>(a: &[V], b: &[V]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Decode a permutation into an active schedule and evaluate the selected
/// criteria.
///
/// Completion times follow the flow shop recursion over the sequence: the
/// job at position `i` starts on machine `k` as soon as both its own
/// operation on machine `k-1` and its predecessor's operation on machine `k`
/// have finished.
pub fn decode_and_evaluate<T: TimeValue>(
    instance: &Instance<T>,
    perm: &Permutation,
    objectives: &ObjectiveSet,
) -> Result<ObjectiveVector<T>> {
    if perm.len() != instance.jobs() {
        return Err(Error::DimensionMismatch {
            expected: instance.jobs(),
            found: perm.len(),
        });
    }
    let mut machine_completion = vec![T::zero(); instance.machines()];
    Ok(evaluate_with_scratch(
        instance,
        perm,
        objectives,
        &mut machine_completion,
    ))
}

/// Evaluation core reused by the budgeted evaluator and the oracle; the
/// caller provides the per-machine completion buffer (zeroed on entry here)
/// to keep hot loops allocation-free.
pub(crate) fn evaluate_with_scratch<T: TimeValue>(
    instance: &Instance<T>,
    perm: &Permutation,
    objectives: &ObjectiveSet,
    machine_completion: &mut [T],
) -> ObjectiveVector<T> {
    debug_assert_eq!(perm.len(), instance.jobs());
    debug_assert_eq!(machine_completion.len(), instance.machines());
    machine_completion.fill(T::zero());

    let m = instance.machines();
    let mut cmax = T::zero();
    let mut csum = T::zero();
    let mut tsum = T::zero();
    for &job in perm.as_slice() {
        let row = instance.processing_row(job);
        machine_completion[0] += row[0];
        for k in 1..m {
            let ready = if machine_completion[k] > machine_completion[k - 1] {
                machine_completion[k]
            } else {
                machine_completion[k - 1]
            };
            machine_completion[k] = ready + row[k];
        }
        let completion = machine_completion[m - 1];
        if completion > cmax {
            cmax = completion;
        }
        csum += completion;
        let due = instance.due_date(job);
        if completion > due {
            tsum += completion - due;
        }
    }

    let values = objectives
        .criteria()
        .iter()
        .map(|c| match c {
            Criterion::Cmax => cmax,
            Criterion::Csum | Criterion::CsumAvg => csum,
            Criterion::Tsum | Criterion::TsumAvg => tsum,
        })
        .collect();
    ObjectiveVector::new(values)
}

/// Full completion-time matrix in sequence order: row `i`, column `k` is the
/// completion of the `i`-th sequenced job on machine `k`. A slower second
/// route through the same recursion, useful for checks and for schedule
/// inspection (starting times are `completion - processing`).
pub fn completion_matrix<T: TimeValue>(
    instance: &Instance<T>,
    perm: &Permutation,
) -> Result<Vec<Vec<T>>> {
    if perm.len() != instance.jobs() {
        return Err(Error::DimensionMismatch {
            expected: instance.jobs(),
            found: perm.len(),
        });
    }
    let m = instance.machines();
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(perm.len());
    for (i, &job) in perm.as_slice().iter().enumerate() {
        let row = instance.processing_row(job);
        let mut completions = vec![T::zero(); m];
        for k in 0..m {
            let prev_machine = if k > 0 { completions[k - 1] } else { T::zero() };
            let prev_job = if i > 0 { rows[i - 1][k] } else { T::zero() };
            let ready = if prev_machine > prev_job {
                prev_machine
            } else {
                prev_job
            };
            completions[k] = ready + row[k];
        }
        rows.push(completions);
    }
    Ok(rows)
}

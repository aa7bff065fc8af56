//! The two search engines.
//!
//! **Pareto Iterated Local Search** alternates intensification and
//! diversification over the archive. Intensification evaluates one whole
//! roster neighborhood of the current solution at a time, archiving every
//! neighbor, then moves to the first enumerated neighbor that strictly
//! dominates it (reshuffling the roster order on every move); the solution
//! is locally optimal once it survives full scans of every neighborhood.
//! The locally optimal solution is flagged as investigated; search
//! continues from a random unexplored archive member, or, when none is
//! left, from the perturbation of a random member.
//!
//! The **multi-operator search** baseline explores one randomly chosen
//! neighborhood of a random unexplored archive member at a time, flags the
//! member, and restarts from a fresh random solution — keeping the archive —
//! once every member has been explored.
//!
//! Both engines share the bookkeeping rules: every decoded candidate
//! (initial, neighbor, perturbed or restart solution) counts one evaluation
//! against the budget, the budget is checked before each evaluation, and
//! all random draws come from a single per-run ChaCha8 generator so runs
//! are reproducible from their seed alone.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::archive::ParetoArchive;
use crate::error::{Error, Result};
use crate::model::{evaluate_with_scratch, Instance, ObjectiveSet, ObjectiveVector, Permutation};
use crate::neighborhoods::{perturb, NeighborhoodKind};
use crate::{Time, TimeValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Pils,
    Mos,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pils => "pils",
            Algorithm::Mos => "mos",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pils" => Ok(Algorithm::Pils),
            "mos" => Ok(Algorithm::Mos),
            other => Err(Error::InvalidInput(format!(
                "unknown algorithm '{}' (expected pils or mos)",
                other
            ))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One run's parameters. `seed` fully determines the run given the
/// instance; `neighborhoods` lists the roster in its initial order.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub max_evaluations: u64,
    pub seed: u64,
    pub objectives: ObjectiveSet,
    pub neighborhoods: Vec<NeighborhoodKind>,
    /// Record every evaluated (permutation, vector) pair in the result.
    /// Meant for small-scale analysis; off by default.
    pub log_evaluations: bool,
}

impl SearchConfig {
    pub fn new(
        algorithm: Algorithm,
        max_evaluations: u64,
        seed: u64,
        objectives: ObjectiveSet,
    ) -> Result<Self> {
        let cfg = Self {
            algorithm,
            max_evaluations,
            seed,
            objectives,
            neighborhoods: NeighborhoodKind::ALL.to_vec(),
            log_evaluations: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_neighborhoods(mut self, roster: Vec<NeighborhoodKind>) -> Result<Self> {
        self.neighborhoods = roster;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_evaluations == 0 {
            return Err(Error::InvalidConfig(
                "evaluation budget must be at least 1".into(),
            ));
        }
        if self.neighborhoods.is_empty() {
            return Err(Error::InvalidConfig(
                "neighborhood roster must not be empty".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one run.
#[derive(Debug, Clone)]
pub struct SearchResult<T = Time> {
    pub archive: ParetoArchive<T>,
    /// Objective evaluations consumed.
    pub evaluations: u64,
    /// Evaluations spent in each completed intensification episode: a full
    /// descent to local optimality for PILS, one full neighborhood scan for
    /// MOS. Episodes cut short by the budget are not recorded.
    pub episodes: Vec<u64>,
    pub elapsed: Duration,
    /// Present iff `log_evaluations` was set.
    pub evaluation_log: Option<Vec<(Permutation, ObjectiveVector<T>)>>,
}

/// Periodic progress snapshot for long runs.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub evaluations: u64,
    pub archive_size: usize,
}

/// Result of one intensification descent.
#[derive(Debug, Clone)]
pub struct DescentOutcome<T = Time> {
    pub permutation: Permutation,
    pub objectives: ObjectiveVector<T>,
    /// Neighbor evaluations consumed by the descent (the start solution's
    /// own evaluation is not included).
    pub evaluations: u64,
    /// False when the budget ran out mid-descent.
    pub locally_optimal: bool,
}

/// Periodic invoker of the user progress hook.
struct ProgressEmitter<'h> {
    every: u64,
    hook: &'h mut dyn FnMut(Progress),
}

impl<'h> ProgressEmitter<'h> {
    fn disabled(hook: &'h mut dyn FnMut(Progress)) -> Self {
        Self { every: 0, hook }
    }

    fn maybe(&mut self, evaluations: u64, archive_size: usize) {
        if self.every > 0 && evaluations.is_multiple_of(self.every) {
            (self.hook)(Progress {
                evaluations,
                archive_size,
            });
        }
    }
}

/// Budget-enforcing evaluation counter shared by both engines.
struct Evaluator<'a, T: TimeValue> {
    instance: &'a Instance<T>,
    objectives: &'a ObjectiveSet,
    budget: u64,
    count: u64,
    scratch: Vec<T>,
    log: Option<Vec<(Permutation, ObjectiveVector<T>)>>,
}

impl<'a, T: TimeValue> Evaluator<'a, T> {
    fn new(
        instance: &'a Instance<T>,
        objectives: &'a ObjectiveSet,
        budget: u64,
        log_evaluations: bool,
    ) -> Self {
        Self {
            instance,
            objectives,
            budget,
            count: 0,
            scratch: vec![T::zero(); instance.machines()],
            log: log_evaluations.then(Vec::new),
        }
    }

    fn count(&self) -> u64 {
        self.count
    }

    fn exhausted(&self) -> bool {
        self.count >= self.budget
    }

    /// Evaluate if budget remains; `None` means the run must stop.
    fn try_evaluate(&mut self, perm: &Permutation) -> Option<ObjectiveVector<T>> {
        if self.count >= self.budget {
            return None;
        }
        self.count += 1;
        let vector = evaluate_with_scratch(self.instance, perm, self.objectives, &mut self.scratch);
        if let Some(log) = &mut self.log {
            log.push((perm.clone(), vector.clone()));
        }
        Some(vector)
    }

    /// Evaluate unconditionally; used only for the initial solution so that
    /// even a zero-budget run reports it.
    fn evaluate_initial(&mut self, perm: &Permutation) -> ObjectiveVector<T> {
        self.count += 1;
        let vector = evaluate_with_scratch(self.instance, perm, self.objectives, &mut self.scratch);
        if let Some(log) = &mut self.log {
            log.push((perm.clone(), vector.clone()));
        }
        vector
    }
}

/// Uniform random permutation of `n` jobs via an unbiased shuffle.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    assert!(n >= 1, "permutation needs at least one job");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Permutation::new(order).expect("shuffle preserves bijectivity")
}

/// Shared descent over the roster neighborhoods in their current order.
///
/// One step evaluates the entire neighborhood of the current solution,
/// offering every neighbor to the archive, and then moves to the first
/// enumerated neighbor that strictly dominates the current solution (if
/// any), resetting the scan to the reshuffled first neighborhood. A
/// solution that survives full scans of every neighborhood is locally
/// optimal.
fn descend<T: TimeValue>(
    evaluator: &mut Evaluator<'_, T>,
    archive: &mut ParetoArchive<T>,
    order: &mut [NeighborhoodKind],
    rng: &mut ChaCha8Rng,
    emitter: &mut ProgressEmitter<'_>,
    mut current: Permutation,
    mut current_objs: ObjectiveVector<T>,
) -> DescentOutcome<T> {
    let start_count = evaluator.count();
    let k = order.len();
    let mut i = 0;
    while i < k {
        let mut out_of_budget = false;
        // the iterator borrows `current`; collect the accepted neighbor and
        // swap it in once the scan is complete
        let mut next: Option<(Permutation, ObjectiveVector<T>)> = None;
        for neighbor in order[i].neighbors(&current) {
            match evaluator.try_evaluate(&neighbor) {
                None => {
                    out_of_budget = true;
                    break;
                }
                Some(objs) => {
                    archive
                        .update(&neighbor, &objs)
                        .expect("dimension fixed by the run's objective set");
                    emitter.maybe(evaluator.count(), archive.len());
                    if next.is_none() && objs.dominates(&current_objs) {
                        next = Some((neighbor, objs));
                    }
                }
            }
        }
        if out_of_budget {
            return DescentOutcome {
                permutation: current,
                objectives: current_objs,
                evaluations: evaluator.count() - start_count,
                locally_optimal: false,
            };
        }
        if let Some((perm, objs)) = next {
            current = perm;
            current_objs = objs;
            i = 0;
            order.shuffle(rng);
        } else {
            i += 1;
        }
    }
    DescentOutcome {
        permutation: current,
        objectives: current_objs,
        evaluations: evaluator.count() - start_count,
        locally_optimal: true,
    }
}

/// Descend from `start` until it is locally optimal with respect to every
/// roster neighborhood, updating `archive` along the way exactly as the
/// PILS inner loop would.
///
/// The start solution is evaluated and offered to the archive, but the
/// reported evaluation count covers neighbors only — a start that is
/// already locally optimal costs one full scan of every neighborhood.
/// `max_evaluations` bounds the total including the start's evaluation;
/// pass `u64::MAX` for an unbounded descent.
pub fn intensify_to_local_optimum<T: TimeValue>(
    instance: &Instance<T>,
    start: &Permutation,
    objectives: &ObjectiveSet,
    neighborhoods: &[NeighborhoodKind],
    archive: &mut ParetoArchive<T>,
    rng: &mut ChaCha8Rng,
    max_evaluations: u64,
) -> Result<DescentOutcome<T>> {
    if neighborhoods.is_empty() {
        return Err(Error::InvalidConfig(
            "neighborhood roster must not be empty".into(),
        ));
    }
    if start.len() != instance.jobs() {
        return Err(Error::DimensionMismatch {
            expected: instance.jobs(),
            found: start.len(),
        });
    }
    let mut evaluator = Evaluator::new(instance, objectives, max_evaluations, false);
    let start_objs = match evaluator.try_evaluate(start) {
        Some(objs) => objs,
        None => {
            return Err(Error::InvalidConfig(
                "evaluation budget must be at least 1".into(),
            ))
        }
    };
    archive.update(start, &start_objs)?;
    let mut order = neighborhoods.to_vec();
    let mut noop = |_: Progress| {};
    let mut emitter = ProgressEmitter::disabled(&mut noop);
    Ok(descend(
        &mut evaluator,
        archive,
        &mut order,
        rng,
        &mut emitter,
        start.clone(),
        start_objs,
    ))
}

/// Run the engine selected by the configuration.
pub fn run<T: TimeValue>(instance: &Instance<T>, config: &SearchConfig) -> Result<SearchResult<T>> {
    match config.algorithm {
        Algorithm::Pils => run_pils(instance, config),
        Algorithm::Mos => run_mos(instance, config),
    }
}

/// [`run`] with a progress hook invoked every `progress_every` evaluations.
pub fn run_with_progress<T: TimeValue>(
    instance: &Instance<T>,
    config: &SearchConfig,
    progress_every: Option<u64>,
    progress: &mut dyn FnMut(Progress),
) -> Result<SearchResult<T>> {
    match config.algorithm {
        Algorithm::Pils => run_pils_with_progress(instance, config, progress_every, progress),
        Algorithm::Mos => run_mos_with_progress(instance, config, progress_every, progress),
    }
}

pub fn run_pils<T: TimeValue>(
    instance: &Instance<T>,
    config: &SearchConfig,
) -> Result<SearchResult<T>> {
    run_pils_with_progress(instance, config, None, &mut |_| {})
}

pub fn run_mos<T: TimeValue>(
    instance: &Instance<T>,
    config: &SearchConfig,
) -> Result<SearchResult<T>> {
    run_mos_with_progress(instance, config, None, &mut |_| {})
}

/// PILS with an optional progress hook invoked every `progress_every`
/// evaluations.
pub fn run_pils_with_progress<T: TimeValue>(
    instance: &Instance<T>,
    config: &SearchConfig,
    progress_every: Option<u64>,
    progress: &mut dyn FnMut(Progress),
) -> Result<SearchResult<T>> {
    check_engine_inputs(instance, config)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut evaluator = Evaluator::new(
        instance,
        &config.objectives,
        config.max_evaluations,
        config.log_evaluations,
    );
    let mut archive = ParetoArchive::new();
    let mut order = config.neighborhoods.clone();
    let mut episodes = Vec::new();
    let mut emitter = ProgressEmitter {
        every: progress_every.unwrap_or(0),
        hook: progress,
    };

    let initial = random_permutation(instance.jobs(), &mut rng);
    let initial_objs = evaluator.evaluate_initial(&initial);
    archive
        .update(&initial, &initial_objs)
        .expect("first insertion fixes the dimension");
    emitter.maybe(evaluator.count(), archive.len());

    let mut current = initial;
    let mut current_objs = initial_objs;
    while !evaluator.exhausted() {
        let outcome = descend(
            &mut evaluator,
            &mut archive,
            &mut order,
            &mut rng,
            &mut emitter,
            current,
            current_objs,
        );
        if !outcome.locally_optimal {
            break;
        }
        episodes.push(outcome.evaluations);
        archive.mark_investigated(&outcome.permutation);

        if let Some(entry) = archive.select_uninvestigated(&mut rng) {
            current = entry.permutation.clone();
            current_objs = entry.objectives.clone();
        } else {
            let source = archive
                .select_any(&mut rng)
                .expect("archive holds at least the initial solution")
                .permutation
                .clone();
            // below the perturbation's 4-job window, fall back to a fresh
            // random solution
            let candidate = if instance.jobs() >= 4 {
                perturb(&source, &mut rng)?
            } else {
                random_permutation(instance.jobs(), &mut rng)
            };
            match evaluator.try_evaluate(&candidate) {
                None => break,
                Some(objs) => {
                    archive
                        .update(&candidate, &objs)
                        .expect("dimension fixed by the run's objective set");
                    emitter.maybe(evaluator.count(), archive.len());
                    current = candidate;
                    current_objs = objs;
                }
            }
        }
    }

    Ok(SearchResult {
        archive,
        evaluations: evaluator.count(),
        episodes,
        elapsed: started.elapsed(),
        evaluation_log: evaluator.log,
    })
}

/// MOS with an optional progress hook invoked every `progress_every`
/// evaluations.
pub fn run_mos_with_progress<T: TimeValue>(
    instance: &Instance<T>,
    config: &SearchConfig,
    progress_every: Option<u64>,
    progress: &mut dyn FnMut(Progress),
) -> Result<SearchResult<T>> {
    check_engine_inputs(instance, config)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut evaluator = Evaluator::new(
        instance,
        &config.objectives,
        config.max_evaluations,
        config.log_evaluations,
    );
    let mut archive = ParetoArchive::new();
    let mut episodes = Vec::new();
    let mut emitter = ProgressEmitter {
        every: progress_every.unwrap_or(0),
        hook: progress,
    };

    let initial = random_permutation(instance.jobs(), &mut rng);
    let initial_objs = evaluator.evaluate_initial(&initial);
    archive
        .update(&initial, &initial_objs)
        .expect("first insertion fixes the dimension");
    emitter.maybe(evaluator.count(), archive.len());

    while !evaluator.exhausted() {
        if let Some(entry) = archive.select_uninvestigated(&mut rng) {
            let member = entry.permutation.clone();
            let kind = config.neighborhoods[rng.random_range(0..config.neighborhoods.len())];
            let scan_start = evaluator.count();
            let mut out_of_budget = false;
            for neighbor in kind.neighbors(&member) {
                match evaluator.try_evaluate(&neighbor) {
                    None => {
                        out_of_budget = true;
                        break;
                    }
                    Some(objs) => {
                        archive
                            .update(&neighbor, &objs)
                            .expect("dimension fixed by the run's objective set");
                        emitter.maybe(evaluator.count(), archive.len());
                    }
                }
            }
            if out_of_budget {
                break;
            }
            episodes.push(evaluator.count() - scan_start);
            // mark only if the member survived the scan in the archive
            archive.mark_investigated(&member);
        } else {
            // every member explored: restart from a fresh random solution
            // while keeping the archive
            let candidate = random_permutation(instance.jobs(), &mut rng);
            match evaluator.try_evaluate(&candidate) {
                None => break,
                Some(objs) => {
                    archive
                        .update(&candidate, &objs)
                        .expect("dimension fixed by the run's objective set");
                    emitter.maybe(evaluator.count(), archive.len());
                }
            }
        }
    }

    Ok(SearchResult {
        archive,
        evaluations: evaluator.count(),
        episodes,
        elapsed: started.elapsed(),
        evaluation_log: evaluator.log,
    })
}

fn check_engine_inputs<T: TimeValue>(instance: &Instance<T>, config: &SearchConfig) -> Result<()> {
    if instance.jobs() < 2 {
        return Err(Error::InvalidInput(
            "search needs at least two jobs".into(),
        ));
    }
    if config.neighborhoods.is_empty() {
        return Err(Error::InvalidConfig(
            "neighborhood roster must not be empty".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_job_instance() -> Instance<i64> {
        Instance::new(vec![vec![1], vec![2]], vec![0, 0]).unwrap()
    }

    fn config(algorithm: Algorithm, budget: u64, seed: u64) -> SearchConfig {
        SearchConfig::new(algorithm, budget, seed, ObjectiveSet::cmax_tsum()).unwrap()
    }

    fn archive_vectors(result: &SearchResult<i64>) -> Vec<Vec<i64>> {
        let mut vs: Vec<Vec<i64>> = result
            .archive
            .iter()
            .map(|e| e.objectives.values().to_vec())
            .collect();
        vs.sort();
        vs
    }

    #[test]
    fn both_engines_find_the_two_job_front() {
        let instance = two_job_instance();
        for algorithm in [Algorithm::Pils, Algorithm::Mos] {
            for seed in 1..=5 {
                let result = run(&instance, &config(algorithm, 100, seed)).unwrap();
                assert_eq!(archive_vectors(&result), vec![vec![3, 4]], "{algorithm}");
            }
        }
    }

    #[test]
    fn budget_one_keeps_only_the_initial_solution() {
        let instance = two_job_instance();
        for algorithm in [Algorithm::Pils, Algorithm::Mos] {
            let result = run(&instance, &config(algorithm, 1, 3)).unwrap();
            assert_eq!(result.evaluations, 1);
            assert_eq!(result.archive.len(), 1);
        }
    }

    #[test]
    fn zero_budget_config_is_rejected() {
        assert!(matches!(
            SearchConfig::new(Algorithm::Pils, 0, 1, ObjectiveSet::cmax_tsum()),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn hand_built_zero_budget_run_still_reports_the_initial_solution() {
        // SearchConfig::new refuses a zero budget, but a literal config must
        // still degrade gracefully: evaluate the initial solution and stop.
        let raw = SearchConfig {
            algorithm: Algorithm::Pils,
            max_evaluations: 0,
            seed: 2,
            objectives: ObjectiveSet::cmax_tsum(),
            neighborhoods: NeighborhoodKind::ALL.to_vec(),
            log_evaluations: false,
        };
        let instance = two_job_instance();
        for algorithm in [Algorithm::Pils, Algorithm::Mos] {
            let result = run(&instance, &SearchConfig { algorithm, ..raw.clone() }).unwrap();
            assert_eq!(result.archive.len(), 1);
            assert_eq!(result.evaluations, 1);
        }
    }

    #[test]
    fn single_job_instance_is_rejected() {
        let instance = Instance::new(vec![vec![1, 2]], vec![0]).unwrap();
        assert!(run(&instance, &config(Algorithm::Pils, 10, 1)).is_err());
    }

    #[test]
    fn budget_is_never_exceeded() {
        let instance = crate::io::generate_instance::<i64>(6, 3, 50, 8).unwrap();
        for algorithm in [Algorithm::Pils, Algorithm::Mos] {
            for budget in [1u64, 7, 33, 500] {
                let result = run(&instance, &config(algorithm, budget, 4)).unwrap();
                assert!(result.evaluations <= budget);
            }
        }
    }

    #[test]
    fn identical_seeds_reproduce_the_run() {
        let instance = crate::io::generate_instance::<i64>(7, 3, 99, 21).unwrap();
        for algorithm in [Algorithm::Pils, Algorithm::Mos] {
            let cfg = config(algorithm, 5_000, 77);
            let a = run(&instance, &cfg).unwrap();
            let b = run(&instance, &cfg).unwrap();
            assert_eq!(a.archive.entries(), b.archive.entries());
            assert_eq!(a.evaluations, b.evaluations);
            assert_eq!(a.episodes, b.episodes);
        }
    }

    #[test]
    fn random_permutation_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(random_permutation(1, &mut rng).as_slice(), &[0]);
        for _ in 0..100 {
            let p = random_permutation(6, &mut rng);
            assert!(Permutation::new(p.as_slice().to_vec()).is_ok());
        }
    }

    #[test]
    fn random_permutation_is_roughly_uniform() {
        use std::collections::HashMap;
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let mut counts: HashMap<Vec<usize>, u32> = HashMap::new();
        for _ in 0..6000 {
            let p = random_permutation(3, &mut rng);
            *counts.entry(p.as_slice().to_vec()).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        for (perm, count) in counts {
            assert!(
                (900..=1100).contains(&count),
                "permutation {perm:?} drawn {count} times"
            );
        }
    }

    #[test]
    fn descent_from_local_optimum_scans_every_neighborhood_once() {
        let instance = two_job_instance();
        let objectives = ObjectiveSet::cmax_tsum();
        let mut archive = ParetoArchive::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let start = Permutation::new(vec![0, 1]).unwrap(); // (3,4): the optimum
        let outcome = intensify_to_local_optimum(
            &instance,
            &start,
            &objectives,
            &NeighborhoodKind::ALL,
            &mut archive,
            &mut rng,
            u64::MAX,
        )
        .unwrap();
        assert!(outcome.locally_optimal);
        assert_eq!(outcome.permutation, start);
        // n = 2: each neighborhood holds exactly one move
        assert_eq!(outcome.evaluations, 3);
    }

    #[test]
    fn descent_reaches_the_dominating_permutation() {
        let instance = two_job_instance();
        let objectives = ObjectiveSet::cmax_tsum();
        let mut archive = ParetoArchive::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let start = Permutation::new(vec![1, 0]).unwrap(); // (3,5)
        let outcome = intensify_to_local_optimum(
            &instance,
            &start,
            &objectives,
            &NeighborhoodKind::ALL,
            &mut archive,
            &mut rng,
            u64::MAX,
        )
        .unwrap();
        assert!(outcome.locally_optimal);
        assert_eq!(outcome.permutation.as_slice(), &[0, 1]);
        assert_eq!(outcome.objectives.values(), &[3, 4]);
    }

    #[test]
    fn descent_reports_budget_exhaustion() {
        let instance = crate::io::generate_instance::<i64>(8, 3, 50, 2).unwrap();
        let objectives = ObjectiveSet::cmax_tsum();
        let mut archive = ParetoArchive::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let start = random_permutation(8, &mut rng);
        let outcome = intensify_to_local_optimum(
            &instance,
            &start,
            &objectives,
            &NeighborhoodKind::ALL,
            &mut archive,
            &mut rng,
            5, // 1 for the start, 4 for neighbors
        )
        .unwrap();
        assert!(!outcome.locally_optimal);
        assert_eq!(outcome.evaluations, 4);
    }

    #[test]
    fn larger_instances_cost_more_descent_evaluations() {
        let objectives = ObjectiveSet::cmax_tsum();
        let mut means = Vec::new();
        for (jobs, seed) in [(6usize, 31u64), (12, 32)] {
            let base = crate::io::generate_instance::<i64>(jobs, 3, 50, seed).unwrap();
            let instance = crate::io::generate_due_dates(&base, 1.5, 0).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            let mut total = 0u64;
            for _ in 0..20 {
                let start = random_permutation(jobs, &mut rng);
                let mut archive = ParetoArchive::new();
                let outcome = intensify_to_local_optimum(
                    &instance,
                    &start,
                    &objectives,
                    &NeighborhoodKind::ALL,
                    &mut archive,
                    &mut rng,
                    u64::MAX,
                )
                .unwrap();
                assert!(outcome.locally_optimal);
                total += outcome.evaluations;
            }
            means.push(total as f64 / 20.0);
        }
        assert!(means[1] > means[0], "descent cost should grow: {means:?}");
    }

    #[test]
    fn progress_hook_fires_at_the_configured_interval() {
        let instance = crate::io::generate_instance::<i64>(6, 3, 50, 1).unwrap();
        let cfg = config(Algorithm::Pils, 2_000, 1);
        let mut snapshots = Vec::new();
        let result = run_pils_with_progress(&instance, &cfg, Some(500), &mut |p| {
            snapshots.push(p.evaluations);
        })
        .unwrap();
        assert!(!snapshots.is_empty());
        assert!(snapshots.iter().all(|&e| e <= result.evaluations));
    }

    #[test]
    fn three_job_instances_use_the_random_restart_fallback() {
        // below the perturbation window the engines restart from fresh
        // random permutations; the full 6-permutation space must be solved
        let instance = Instance::new(vec![vec![4, 1], vec![2, 6], vec![3, 3]], vec![5, 5, 5])
            .unwrap();
        let objectives = ObjectiveSet::cmax_tsum();
        let front = crate::oracle::exact_front(&instance, &objectives, 10).unwrap();
        let mut expected: Vec<Vec<i64>> =
            front.iter().map(|(_, v)| v.values().to_vec()).collect();
        expected.sort();
        for algorithm in [Algorithm::Pils, Algorithm::Mos] {
            let result = run(&instance, &config(algorithm, 2_000, 1)).unwrap();
            assert_eq!(archive_vectors(&result), expected, "{algorithm}");
        }
    }

    #[test]
    fn mos_restart_keeps_the_archive() {
        // tiny instance: MOS exhausts the two-permutation space quickly and
        // must keep restarting without losing the front
        let instance = two_job_instance();
        let result = run(&instance, &config(Algorithm::Mos, 300, 9)).unwrap();
        assert_eq!(archive_vectors(&result), vec![vec![3, 4]]);
        assert_eq!(result.evaluations, 300);
    }
}

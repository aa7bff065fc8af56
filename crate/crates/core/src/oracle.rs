//! Exact Pareto fronts by exhaustive enumeration.
//!
//! Every one of the `n!` permutations is evaluated in lexicographic order
//! via in-place successor generation, so memory stays proportional to the
//! front. Intended for desk-scale verification; anything above the limit is
//! refused.

use crate::archive::ParetoArchive;
use crate::error::{Error, Result};
use crate::model::{evaluate_with_scratch, Instance, ObjectiveSet, ObjectiveVector, Permutation};
use crate::TimeValue;

/// 10! ≈ 3.6M evaluations: minutes, not hours.
pub const DEFAULT_LIMIT: usize = 10;

/// Exact Pareto front: all non-dominated objective vectors with one
/// representative permutation each (the lexicographically first achiever).
/// The front is returned sorted by objective vector.
pub fn exact_front<T: TimeValue>(
    instance: &Instance<T>,
    objectives: &ObjectiveSet,
    limit: usize,
) -> Result<Vec<(Permutation, ObjectiveVector<T>)>> {
    let n = instance.jobs();
    if n > limit {
        return Err(Error::EnumerationRefused { jobs: n, limit });
    }
    let mut archive = ParetoArchive::new();
    let mut order: Vec<usize> = (0..n).collect();
    let mut scratch = vec![T::zero(); instance.machines()];
    loop {
        let perm = Permutation::new(order.clone()).expect("successor preserves bijectivity");
        let vector = evaluate_with_scratch(instance, &perm, objectives, &mut scratch);
        archive
            .update(&perm, &vector)
            .expect("dimension fixed by the objective set");
        if !next_permutation(&mut order) {
            break;
        }
    }
    let mut front: Vec<(Permutation, ObjectiveVector<T>)> = archive
        .iter()
        .map(|e| (e.permutation.clone(), e.objectives.clone()))
        .collect();
    front.sort_by(|a, b| a.1.values().cmp(b.1.values()));
    Ok(front)
}

/// Front vectors exposed as real values, in the front's sorted order.
pub fn exact_front_real<T: TimeValue>(
    instance: &Instance<T>,
    objectives: &ObjectiveSet,
    limit: usize,
) -> Result<Vec<Vec<f64>>> {
    let front = exact_front(instance, objectives, limit)?;
    Ok(front
        .iter()
        .map(|(_, v)| objectives.to_real(v, instance.jobs()))
        .collect())
}

/// Advance to the lexicographic successor; false once the order is the last
/// (descending) permutation.
fn next_permutation(order: &mut [usize]) -> bool {
    let n = order.len();
    if n < 2 {
        return false;
    }
    let Some(pivot) = (0..n - 1).rev().find(|&i| order[i] < order[i + 1]) else {
        return false;
    };
    let successor = (pivot + 1..n)
        .rev()
        .find(|&j| order[j] > order[pivot])
        .expect("pivot guarantees a larger tail element");
    order.swap(pivot, successor);
    order[pivot + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ObjectiveSet;

    #[test]
    fn two_job_front() {
        let instance = Instance::new(vec![vec![1], vec![2]], vec![0, 0]).unwrap();
        let front = exact_front(&instance, &ObjectiveSet::cmax_tsum(), DEFAULT_LIMIT).unwrap();
        assert_eq!(front.len(), 1);
        assert_eq!(front[0].0.to_one_based(), vec![1, 2]);
        assert_eq!(front[0].1.values(), &[3, 4]);
    }

    #[test]
    fn single_job_front_is_that_jobs_vector() {
        let instance = Instance::new(vec![vec![2, 3]], vec![5]).unwrap();
        let front = exact_front(&instance, &ObjectiveSet::cmax_tsum(), DEFAULT_LIMIT).unwrap();
        assert_eq!(front.len(), 1);
        assert_eq!(front[0].1.values(), &[5, 0]);
    }

    #[test]
    fn refuses_oversized_instances() {
        let instance = crate::io::generate_instance::<i64>(12, 2, 9, 1).unwrap();
        let err = exact_front(&instance, &ObjectiveSet::cmax_tsum(), DEFAULT_LIMIT).unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationRefused { jobs: 12, limit: 10 }
        ));
    }

    #[test]
    fn next_permutation_visits_all_orders() {
        let mut order = vec![0usize, 1, 2, 3];
        let mut seen = vec![order.clone()];
        while next_permutation(&mut order) {
            seen.push(order.clone());
        }
        assert_eq!(seen.len(), 24);
        let mut dedup = seen.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 24);
        // lexicographic: identity first, full reversal last
        assert_eq!(seen.first().unwrap(), &vec![0, 1, 2, 3]);
        assert_eq!(seen.last().unwrap(), &vec![3, 2, 1, 0]);
    }

    #[test]
    fn front_is_non_dominated_against_every_permutation() {
        let base = crate::io::generate_instance::<i64>(5, 3, 40, 7).unwrap();
        let instance = crate::io::generate_due_dates(&base, 1.5, 0).unwrap();
        let objectives = ObjectiveSet::cmax_tsum();
        let front = exact_front(&instance, &objectives, DEFAULT_LIMIT).unwrap();

        // second, independent pass: collect every evaluation
        let mut order: Vec<usize> = (0..5).collect();
        let mut all = Vec::new();
        loop {
            let perm = Permutation::new(order.clone()).unwrap();
            all.push(crate::model::decode_and_evaluate(&instance, &perm, &objectives).unwrap());
            if !next_permutation(&mut order) {
                break;
            }
        }
        assert_eq!(all.len(), 120);
        for (_, v) in &front {
            assert!(all.iter().all(|w| !w.dominates(v)));
        }
        // and every vector is weakly dominated by some front member
        for w in &all {
            assert!(front.iter().any(|(_, v)| v.weakly_dominates(w)));
        }
    }

    #[test]
    fn representative_is_lexicographically_first() {
        // all processing times equal: every permutation shares one vector,
        // so the representative must be the identity
        let instance = Instance::new(vec![vec![1, 1]; 4], vec![10; 4]).unwrap();
        let front = exact_front(&instance, &ObjectiveSet::cmax_tsum(), DEFAULT_LIMIT).unwrap();
        assert_eq!(front.len(), 1);
        assert_eq!(front[0].0.to_one_based(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn deterministic_output() {
        let base = crate::io::generate_instance::<i64>(6, 3, 30, 3).unwrap();
        let instance = crate::io::generate_due_dates(&base, 1.5, 0).unwrap();
        let objectives = ObjectiveSet::cmax_tsum();
        let a = exact_front(&instance, &objectives, DEFAULT_LIMIT).unwrap();
        let b = exact_front(&instance, &objectives, DEFAULT_LIMIT).unwrap();
        assert_eq!(a, b);
    }
}

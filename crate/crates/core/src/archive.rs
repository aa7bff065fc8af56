//! The approximation set: a mutually non-dominated archive of permutations
//! with per-entry `investigated` flags.
//!
//! The archive keeps one representative permutation per objective vector
//! (the first one seen), so vectors are pairwise distinct and mutual
//! non-dominance holds after every update. Entries stay in insertion order
//! and dominance checks are linear scans; the fronts handled here are small
//! enough that nothing fancier pays off.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{ObjectiveVector, Permutation};
use crate::{Time, TimeValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchiveEntry<T = Time> {
    pub permutation: Permutation,
    pub objectives: ObjectiveVector<T>,
    pub investigated: bool,
}

/// Result of offering a candidate to the archive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateOutcome {
    /// Candidate entered the archive, displacing `removed` dominated entries.
    Accepted { removed: usize },
    /// Candidate was dominated by, or equal to, an existing entry.
    Rejected,
}

impl UpdateOutcome {
    pub fn accepted(self) -> bool {
        matches!(self, UpdateOutcome::Accepted { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParetoArchive<T = Time> {
    entries: Vec<ArchiveEntry<T>>,
}

impl<T: TimeValue> ParetoArchive<T> {
    pub fn new() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry<T>] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ArchiveEntry<T>> {
        self.entries.iter()
    }

    /// Objective dimension, fixed by the first insertion.
    pub fn dimension(&self) -> Option<usize> {
        self.entries.first().map(|e| e.objectives.len())
    }

    pub fn vectors(&self) -> Vec<ObjectiveVector<T>> {
        self.entries.iter().map(|e| e.objectives.clone()).collect()
    }

    /// Offer a candidate. Rejected when some entry weakly dominates it
    /// (which covers both strict dominance and vector equality); otherwise
    /// every entry it strictly dominates is removed and the candidate is
    /// inserted uninvestigated.
    pub fn update(
        &mut self,
        perm: &Permutation,
        objectives: &ObjectiveVector<T>,
    ) -> Result<UpdateOutcome> {
        if let Some(dim) = self.dimension() {
            if objectives.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: objectives.len(),
                });
            }
        }
        if self
            .entries
            .iter()
            .any(|e| e.objectives.weakly_dominates(objectives))
        {
            return Ok(UpdateOutcome::Rejected);
        }
        let before = self.entries.len();
        self.entries
            .retain(|e| !objectives.dominates(&e.objectives));
        let removed = before - self.entries.len();
        self.entries.push(ArchiveEntry {
            permutation: perm.clone(),
            objectives: objectives.clone(),
            investigated: false,
        });
        Ok(UpdateOutcome::Accepted { removed })
    }

    /// Uniformly random entry whose neighborhoods have not been explored
    /// yet, or `None` when all are investigated. Consumes one draw from the
    /// generator iff a candidate exists.
    pub fn select_uninvestigated<R: Rng>(&self, rng: &mut R) -> Option<&ArchiveEntry<T>> {
        let candidates: Vec<usize> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.investigated)
            .map(|(i, _)| i)
            .collect();
        if candidates.is_empty() {
            return None;
        }
        let pick = candidates[rng.random_range(0..candidates.len())];
        Some(&self.entries[pick])
    }

    /// Uniformly random entry regardless of flag.
    pub fn select_any<R: Rng>(&self, rng: &mut R) -> Result<&ArchiveEntry<T>> {
        if self.entries.is_empty() {
            return Err(Error::EmptyArchive);
        }
        Ok(&self.entries[rng.random_range(0..self.entries.len())])
    }

    pub fn has_uninvestigated(&self) -> bool {
        self.entries.iter().any(|e| !e.investigated)
    }

    /// Flag the entry holding `perm` as investigated. Idempotent; a no-op
    /// when the entry has already been displaced by a dominating update.
    pub fn mark_investigated(&mut self, perm: &Permutation) {
        if let Some(entry) = self.entries.iter_mut().find(|e| &e.permutation == perm) {
            entry.investigated = true;
        }
    }

    /// Exhaustive pairwise check of the archive invariants: no entry
    /// dominates another and vectors are pairwise distinct.
    pub fn is_mutually_non_dominated(&self) -> bool {
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if a.objectives == b.objectives
                    || a.objectives.dominates(&b.objectives)
                    || b.objectives.dominates(&a.objectives)
                {
                    return false;
                }
            }
        }
        true
    }
}

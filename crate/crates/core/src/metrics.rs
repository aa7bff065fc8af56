//! Approximation quality: the D1 (average) and D2 (maximum) regret of a
//! reference front against an approximation set.
//!
//! Distances use the weighted Chebyshev achievement measure with
//! non-negative clamping: with per-dimension reference ranges `R_k` and
//! weights `w_k = 1/R_k` (`w_k = 1` for a degenerate range),
//!
//! ```text
//! d(r, a) = max_k w_k · max(0, a_k − r_k)
//! δ(r)    = min_{a ∈ approx} d(r, a)
//! D1      = mean_r δ(r)        D2 = max_r δ(r)
//! ```
//!
//! Both are zero exactly when every reference point is weakly dominated by
//! some approximation point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::dominates_components;

/// Frozen reference front: mutually non-dominated real vectors plus the
/// range-normalized weights derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet {
    vectors: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl ReferenceSet {
    /// Validates non-emptiness, uniform dimensions, pairwise distinctness
    /// and mutual non-dominance, then derives the weights.
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidInput("reference set must not be empty".into()));
        }
        let dim = vectors[0].len();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "reference vectors must have at least one dimension".into(),
            ));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(
                    "reference vectors must be finite".into(),
                ));
            }
        }
        for (i, a) in vectors.iter().enumerate() {
            for b in &vectors[i + 1..] {
                if a == b {
                    return Err(Error::Validation(format!(
                        "duplicate reference vector {a:?}"
                    )));
                }
                if dominates_components(a, b) || dominates_components(b, a) {
                    return Err(Error::Validation(format!(
                        "reference vectors {a:?} and {b:?} are not mutually non-dominated"
                    )));
                }
            }
        }
        let weights = (0..dim)
            .map(|k| {
                let min = vectors.iter().map(|v| v[k]).fold(f64::INFINITY, f64::min);
                let max = vectors
                    .iter()
                    .map(|v| v[k])
                    .fold(f64::NEG_INFINITY, f64::max);
                let range = max - min;
                if range > 0.0 {
                    1.0 / range
                } else {
                    1.0
                }
            })
            .collect();
        Ok(Self { vectors, weights })
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dimension(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// D1/D2 pair; `d1 <= d2` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub d1: f64,
    pub d2: f64,
}

/// Regret of the reference front against an approximation set.
pub fn compute_d1_d2(approx: &[Vec<f64>], reference: &ReferenceSet) -> Result<MetricReport> {
    if approx.is_empty() {
        return Err(Error::InvalidInput(
            "approximation set must not be empty".into(),
        ));
    }
    let dim = reference.dimension();
    for a in approx {
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: a.len(),
            });
        }
    }
    let weights = reference.weights();
    let mut sum = 0.0;
    let mut max = 0.0f64;
    for r in reference.vectors() {
        let regret = approx
            .iter()
            .map(|a| chebyshev_excess(a, r, weights))
            .fold(f64::INFINITY, f64::min);
        sum += regret;
        max = max.max(regret);
    }
    Ok(MetricReport {
        d1: sum / reference.len() as f64,
        d2: max,
    })
}

/// `max_k w_k · max(0, a_k − r_k)`: how far `a` sits beyond `r` in the
/// worst weighted dimension.
fn chebyshev_excess(a: &[f64], r: &[f64], weights: &[f64]) -> f64 {
    a.iter()
        .zip(r)
        .zip(weights)
        .map(|((&ak, &rk), &wk)| wk * (ak - rk).max(0.0))
        .fold(0.0f64, f64::max)
}

/// Build a reference front: the oracle front verbatim when available,
/// otherwise the non-dominated filter of the union of all inputs (sorted
/// for a canonical, reproducible order).
pub fn build_reference(
    inputs: &[Vec<Vec<f64>>],
    oracle_front: Option<&[Vec<f64>]>,
) -> Result<ReferenceSet> {
    if let Some(front) = oracle_front {
        return ReferenceSet::new(front.to_vec());
    }
    let union: Vec<Vec<f64>> = inputs.iter().flatten().cloned().collect();
    if union.is_empty() {
        return Err(Error::InvalidInput(
            "cannot build a reference set from empty inputs".into(),
        ));
    }
    let mut front = non_dominated_filter(&union);
    front.sort_by(|a, b| a.partial_cmp(b).expect("finite vectors are comparable"));
    ReferenceSet::new(front)
}

/// Keep the vectors not strictly dominated by any other, one copy per
/// distinct vector (first occurrence wins).
pub fn non_dominated_filter(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    'outer: for v in vectors {
        if kept.contains(v) {
            continue;
        }
        for w in vectors {
            if dominates_components(w, v) {
                continue 'outer;
            }
        }
        kept.push(v.clone());
    }
    kept
}

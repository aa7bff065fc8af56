//! Move generators over permutations and the escape perturbation.
//!
//! Three neighborhoods drive intensification, each enumerating exactly
//! `n(n-1)/2` neighbors in a fixed lexicographic order:
//!
//! * **exchange** — swap the jobs at two positions;
//! * **forward shift** — take the job at position `i` and reinsert it at an
//!   earlier position `j < i`, shifting the jobs in between one step back;
//! * **backward shift** — take the job at position `i` and reinsert it at a
//!   later position `j > i`, shifting the jobs in between one step forward.
//!
//! The perturbation rearranges four consecutive jobs `(a, b, c, d)` into
//! `(c, d, b, a)`; undoing it needs several plain moves, which keeps a
//! subsequent descent from falling straight back into the perturbed
//! optimum.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Permutation;

/// Identifier of one of the three intensification neighborhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborhoodKind {
    Exchange,
    ForwardShift,
    BackwardShift,
}

impl NeighborhoodKind {
    /// Default roster, in the order used when no shuffle has happened yet.
    pub const ALL: [NeighborhoodKind; 3] = [
        NeighborhoodKind::Exchange,
        NeighborhoodKind::ForwardShift,
        NeighborhoodKind::BackwardShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NeighborhoodKind::Exchange => "exchange",
            NeighborhoodKind::ForwardShift => "forward_shift",
            NeighborhoodKind::BackwardShift => "backward_shift",
        }
    }

    /// Number of moves for `n` jobs: `n(n-1)/2`.
    pub fn size(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// All moves of this neighborhood for `n` jobs, lexicographic in the
    /// 1-based `(i, j)` position pair. Empty for `n < 2`.
    pub fn moves(self, n: usize) -> Box<dyn Iterator<Item = Move>> {
        match self {
            NeighborhoodKind::Exchange => Box::new(
                upper_pairs(n).map(|(i, j)| Move {
                    kind: NeighborhoodKind::Exchange,
                    from: i,
                    to: j,
                }),
            ),
            NeighborhoodKind::ForwardShift => Box::new(
                lower_pairs(n).map(|(i, j)| Move {
                    kind: NeighborhoodKind::ForwardShift,
                    from: i,
                    to: j,
                }),
            ),
            NeighborhoodKind::BackwardShift => Box::new(
                upper_pairs(n).map(|(i, j)| Move {
                    kind: NeighborhoodKind::BackwardShift,
                    from: i,
                    to: j,
                }),
            ),
        }
    }

    /// Lazily generated neighbor permutations, in move order.
    pub fn neighbors<'a>(
        self,
        perm: &'a Permutation,
    ) -> impl Iterator<Item = Permutation> + 'a {
        self.moves(perm.len()).map(move |mv| mv.apply(perm))
    }
}

impl std::str::FromStr for NeighborhoodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exchange" => Ok(NeighborhoodKind::Exchange),
            "forward_shift" | "forward" => Ok(NeighborhoodKind::ForwardShift),
            "backward_shift" | "backward" => Ok(NeighborhoodKind::BackwardShift),
            other => Err(Error::InvalidInput(format!(
                "unknown neighborhood '{}'",
                other
            ))),
        }
    }
}

impl std::fmt::Display for NeighborhoodKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Pairs `(i, j)` with `i < j`, lexicographic.
fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n.saturating_sub(1)).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Pairs `(i, j)` with `j < i`, lexicographic.
fn lower_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (0..i).map(move |j| (i, j)))
}

/// One move: take the job at position `from` and exchange it with, or
/// reinsert it at, position `to`. Positions are 0-based here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub kind: NeighborhoodKind,
    pub from: usize,
    pub to: usize,
}

impl Move {
    pub fn apply(&self, perm: &Permutation) -> Permutation {
        let mut next = perm.clone();
        let order = next.as_mut_slice();
        match self.kind {
            NeighborhoodKind::Exchange => order.swap(self.from, self.to),
            NeighborhoodKind::ForwardShift => {
                debug_assert!(self.to < self.from);
                order[self.to..=self.from].rotate_right(1);
            }
            NeighborhoodKind::BackwardShift => {
                debug_assert!(self.to > self.from);
                order[self.from..=self.to].rotate_left(1);
            }
        }
        next
    }
}

/// Rearrange four consecutive jobs starting at a uniformly drawn position:
/// `(a, b, c, d)` becomes `(c, d, b, a)`, everything else stays put.
pub fn perturb<R: Rng>(perm: &Permutation, rng: &mut R) -> Result<Permutation> {
    let n = perm.len();
    if n < 4 {
        return Err(Error::PerturbationUnavailable { jobs: n });
    }
    let start = rng.random_range(0..=n - 4);
    Ok(perturb_at(perm, start))
}

/// The perturbation with an explicit (0-based) segment start.
pub fn perturb_at(perm: &Permutation, start: usize) -> Permutation {
    assert!(
        start + 4 <= perm.len(),
        "perturbation segment out of bounds"
    );
    let mut next = perm.clone();
    let order = next.as_mut_slice();
    let (a, b, c, d) = (
        order[start],
        order[start + 1],
        order[start + 2],
        order[start + 3],
    );
    order[start] = c;
    order[start + 1] = d;
    order[start + 2] = b;
    order[start + 3] = a;
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(order: &[usize]) -> Permutation {
        Permutation::from_one_based(order).unwrap()
    }

    fn one_based(p: &Permutation) -> Vec<usize> {
        p.to_one_based()
    }

    #[test]
    fn exchange_two_jobs() {
        let neighbors: Vec<_> = NeighborhoodKind::Exchange.neighbors(&perm(&[1, 2])).collect();
        assert_eq!(neighbors.len(), 1);
        assert_eq!(one_based(&neighbors[0]), vec![2, 1]);
    }

    #[test]
    fn exchange_order_three_jobs() {
        let neighbors: Vec<Vec<usize>> = NeighborhoodKind::Exchange
            .neighbors(&perm(&[1, 2, 3]))
            .map(|p| one_based(&p))
            .collect();
        assert_eq!(
            neighbors,
            vec![vec![2, 1, 3], vec![3, 2, 1], vec![1, 3, 2]]
        );
    }

    #[test]
    fn forward_shift_examples() {
        let mv = Move {
            kind: NeighborhoodKind::ForwardShift,
            from: 1,
            to: 0,
        };
        assert_eq!(one_based(&mv.apply(&perm(&[1, 2]))), vec![2, 1]);

        let mv = Move {
            kind: NeighborhoodKind::ForwardShift,
            from: 3,
            to: 0,
        };
        assert_eq!(one_based(&mv.apply(&perm(&[1, 2, 3, 4]))), vec![4, 1, 2, 3]);
    }

    #[test]
    fn backward_shift_examples() {
        let mv = Move {
            kind: NeighborhoodKind::BackwardShift,
            from: 0,
            to: 1,
        };
        assert_eq!(one_based(&mv.apply(&perm(&[1, 2]))), vec![2, 1]);

        let mv = Move {
            kind: NeighborhoodKind::BackwardShift,
            from: 0,
            to: 3,
        };
        assert_eq!(one_based(&mv.apply(&perm(&[1, 2, 3, 4]))), vec![2, 3, 4, 1]);
    }

    #[test]
    fn cardinality_matches_formula() {
        for n in [2usize, 5, 20, 50] {
            let p = Permutation::identity(n);
            for kind in NeighborhoodKind::ALL {
                assert_eq!(kind.neighbors(&p).count(), n * (n - 1) / 2);
            }
        }
        assert_eq!(NeighborhoodKind::size(20), 190);
    }

    #[test]
    fn degenerate_sizes_yield_empty() {
        let p = Permutation::identity(1);
        for kind in NeighborhoodKind::ALL {
            assert_eq!(kind.neighbors(&p).count(), 0);
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let p = perm(&[4, 2, 5, 1, 3]);
        for kind in NeighborhoodKind::ALL {
            let a: Vec<_> = kind.neighbors(&p).collect();
            let b: Vec<_> = kind.neighbors(&p).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn exchange_neighbors_pairwise_distinct() {
        let p = perm(&[3, 1, 4, 2, 5]);
        let neighbors: Vec<_> = NeighborhoodKind::Exchange.neighbors(&p).collect();
        for (i, a) in neighbors.iter().enumerate() {
            for b in &neighbors[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn perturb_segment_mapping() {
        assert_eq!(one_based(&perturb_at(&perm(&[1, 2, 3, 4]), 0)), vec![3, 4, 2, 1]);
        assert_eq!(
            one_based(&perturb_at(&perm(&[1, 2, 3, 4, 5, 6]), 2)),
            vec![1, 2, 5, 6, 4, 3]
        );
    }

    #[test]
    fn perturb_requires_four_jobs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = perturb(&perm(&[1, 2, 3]), &mut rng).unwrap_err();
        assert!(matches!(err, Error::PerturbationUnavailable { jobs: 3 }));
    }

    #[test]
    fn perturb_changes_exactly_four_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 4..10 {
            let p = Permutation::identity(n);
            for _ in 0..50 {
                let q = perturb(&p, &mut rng).unwrap();
                assert!(Permutation::new(q.as_slice().to_vec()).is_ok());
                let changed = p
                    .as_slice()
                    .iter()
                    .zip(q.as_slice())
                    .filter(|(a, b)| a != b)
                    .count();
                assert_eq!(changed, 4);
            }
        }
    }

    #[test]
    fn no_single_move_undoes_perturbation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 4..9 {
            for _ in 0..20 {
                let original = crate::search::random_permutation(n, &mut rng);
                let perturbed = perturb(&original, &mut rng).unwrap();
                for kind in NeighborhoodKind::ALL {
                    assert!(kind.neighbors(&perturbed).all(|q| q != original));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn all_neighbors_are_valid_permutations(n in 2usize..9, seed in 0u64..50) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = crate::search::random_permutation(n, &mut rng);
            for kind in NeighborhoodKind::ALL {
                for q in kind.neighbors(&p) {
                    prop_assert!(Permutation::new(q.as_slice().to_vec()).is_ok());
                }
            }
        }
    }
}

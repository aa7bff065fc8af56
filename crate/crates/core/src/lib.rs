//! Multi-objective permutation flow shop scheduling.
//!
//! The crate solves the permutation flow shop problem under several
//! simultaneously minimized criteria (makespan, total or average completion
//! time, total or average tardiness). Solutions are job permutations decoded
//! into active schedules; search maintains a Pareto archive of mutually
//! non-dominated alternatives.
//!
//! Modules map to the moving parts of the solver:
//!
//! * [`model`] — problem instance, permutation decoding, objective vectors
//!   and Pareto dominance.
//! * [`neighborhoods`] — exchange / forward shift / backward shift move
//!   generators and the four-job perturbation operator.
//! * [`archive`] — the mutually non-dominated archive with per-entry
//!   `investigated` flags.
//! * [`search`] — the two engines: Pareto Iterated Local Search and the
//!   multi-operator search baseline, both seeded and budget-bounded.
//! * [`metrics`] — D1/D2 regret of a reference front against an
//!   approximation set.
//! * [`oracle`] — exact Pareto fronts by exhaustive enumeration, for small
//!   instances.
//! * [`io`] — instance files, due-date generation, run records, tabular
//!   exports.
//! * [`harness`] — multi-run experiments, descent-cost measurement and
//!   random-sampling analysis.
//!
//! All scheduling arithmetic is generic over an integer time scalar so that
//! dominance tests stay exact; [`Time`] is the concrete default used
//! throughout the binaries and file formats.

pub mod archive;
pub mod error;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod model;
pub mod neighborhoods;
pub mod oracle;
pub mod search;

use std::fmt;
use std::iter::Sum;

use num_traits::{FromPrimitive, NumAssign, PrimInt, ToPrimitive};

/// Integer scalar for processing times, due dates and objective values.
///
/// Any primitive integer works; the solver only needs ordering, checked
/// arithmetic and conversion to `f64` at the metrics boundary.
pub trait TimeValue:
    PrimInt
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> TimeValue for T where
    T: PrimInt
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Sum
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Default time scalar: wide enough for any benchmark-scale schedule.
pub type Time = i64;

pub use archive::{ArchiveEntry, ParetoArchive, UpdateOutcome};
pub use error::{Error, Result};
pub use metrics::{MetricReport, ReferenceSet};
pub use model::{
    decode_and_evaluate, Criterion, Instance, ObjectiveSet, ObjectiveVector, Permutation,
};
pub use neighborhoods::{perturb, perturb_at, Move, NeighborhoodKind};
pub use oracle::exact_front;
pub use search::{
    intensify_to_local_optimum, random_permutation, run, run_mos, run_pils, run_with_progress,
    Algorithm, DescentOutcome, SearchConfig, SearchResult,
};

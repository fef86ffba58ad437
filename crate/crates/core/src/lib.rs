//! Exact rational machinery for the inverse perfect-cuboid problems.
//!
//! A rational parameter pair `(b, c)` is mapped to the nine elementary
//! multisymmetric values of a would-be cuboid with unit space diagonal. Those
//! values fix two cubics whose roots are the edges and the face diagonals; a
//! pair is interesting only when both cubics split into positive rational
//! roots that can be matched against the three mixed invariants.
//!
//! Module map:
//!
//! - [`param_map`]: `(b, c)` to [`EVector`], with degeneracy detection and an
//!   independent closed-form cross-check.
//! - [`cubic`]: exact rational roots of monic cubics.
//! - [`multisym`]: direct evaluation of the invariants and of every equation
//!   system on explicit tuples. This is the brute-force oracle for the rest.
//! - [`verify`]: the per-pair pipeline and the one-parameter no-go checks.
//! - [`search`]: bounded-height enumeration, parallel sweeps, checkpoints.

pub mod cubic;
pub mod error;
pub mod multisym;
pub mod param_map;
pub mod rational;
pub mod search;
pub mod verify;

pub use cubic::{
    divisors_of, rational_roots, rational_roots_with, MonicCubic, RootClassification, RootStatus,
    RootStrategy,
};
pub use error::{CoreError, RootError};
pub use multisym::{
    cuboid_residuals, eform_residuals, elementary_values, factor_residuals, CuboidCandidate,
    PHI_SCALE,
};
pub use param_map::{
    complete_from_seed, degeneracy_flags, evaluate_closed_forms, evaluate_param_map, Degeneracy,
    DegeneracySet, EVector, ParamPair,
};
pub use rational::{parse_rational, rational_to_string, Rational};
pub use search::{
    enumerate_rationals, grid_count, run_sweep, Checkpoint, RecordLine, SignFilter, SweepDir,
    SweepOptions, SweepPlan, SweepSummary, Verbosity, CHECKPOINT_FILE, RECORDS_FILE,
};
pub use verify::{
    check_one_parameter_cases, evaluate_pair, evaluate_pair_with, CaseSummary, NoGoReport,
    OneParamCase, Outcome, PairingResult, RecordDetail, SearchRecord, PERMUTATIONS,
};

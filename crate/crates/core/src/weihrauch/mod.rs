//! Executable Weihrauch reductions: Baire-space names, multivalued problems
//! with stage-semantics oracles, the reduction checker, and the lattice
//! combinators.
//!
//! # Stage semantics
//!
//! Several of the registered problems (the supremum of a monotone sequence,
//! the limit map, infinite tree paths, cluster points) are not computable.
//! Their oracles are implemented as deterministic, monotone, stage-indexed
//! approximants: at stage `s` the oracle commits to an answer judged on the
//! first `s` steps of the instance, and non-computability appears as stage
//! dependence (mind changes) rather than divergence. Verifiers are
//! three-valued so undecidable equalities can abstain.
//!
//! # Name codings
//!
//! Names are total maps from naturals to naturals (arbitrary precision on
//! both sides). All structured instances ride on the Cantor pairing
//! `<a, b> = (a+b)(a+b+1)/2 + b` and these codes:
//!
//! - integers: zigzag `0, -1, 1, -2, ...`;
//! - dyadics: `0 -> 0`, otherwise `<zigzag(mantissa), zigzag(exponent)> + 1`;
//! - binary words: complete-tree node index, `eps -> 0`,
//!   `w.b -> 2 code(w) + b + 1`;
//! - lists: `[] -> 0`, `h:t -> <h, code(t)> + 1`;
//! - reals: position `p` carries the coded level-`p` dyadic approximation;
//! - sequences: position `<k, j>` carries the `k`-th member's value at `j`;
//! - enclosure functions: tagged query tables, `<0, level>` for the
//!   contraction exponent and `<1, <<lo, hi>, level>>` for coded enclosures.
//!
//! Per-problem instance layouts are documented in [`registry`].

mod combinators;
mod name;
mod problem;
mod registry;

pub use combinators::{
    cn_problem, cn_solve, identity_problem, jump, parallelize, settling_input, CnOutcome,
};
pub use name::{
    cfunc_to_name, creal_seq_to_name, creal_to_name, name_level, name_to_cfunc, name_to_creal,
    name_to_creal_seq, seq_project, seq_tupling, tuple2, Name, LEVEL_CAP,
};
pub use problem::{
    reduce_check, DomainVerdict, Problem, ReduceReport, ReduceRow, ReductionWitness, Verdict,
};
pub use registry::{
    bwt_problem, lim_problem, max_problem, mct_instance, mct_problem, wkl_instance, wkl_problem,
    zero_problem,
};

// The pairing itself is part of this module's public surface; it lives in
// `coding` so the machine enumeration can share it.
pub use crate::coding::{pair, pair_u64, unpair, unpair_u64};

//! wlab: exact real arithmetic with an executable Weihrauch-reduction
//! harness.
//!
//! The crate is organized around the classical constructions of computable
//! analysis, built on exact dyadic arithmetic so that every reported digit
//! is certified:
//!
//! - [`exact`]: dyadic rationals, intervals, rapid Cauchy names, the
//!   stage-truncated supremum oracle.
//! - [`machines`]: a counter-machine universe supplying genuine c.e. sets
//!   (the halting set and a computably inseparable pair) as monotone stage
//!   enumerations.
//! - [`functions`]: piecewise-linear functions on `[0,1]` with certified
//!   range enclosures, and `l2` vectors/functionals.
//! - [`constructions`]: Specker sequences, trisection root finding,
//!   branch-and-bound maxima, Kleene trees, the sequential
//!   intermediate-value counterexample family, dimension-1 fixed points, and
//!   the stage-semantics cluster-point oracle.
//! - [`weihrauch`]: Baire-space names, multivalued problems with
//!   stage-indexed oracles and three-valued verifiers, the reduction
//!   checker, and the combinators (parallelization, jump, choice on the
//!   naturals).
//! - [`reductions`]: executable reduction witnesses between the registered
//!   problems.
//! - [`cli`]: the batch front end behind the `wlab` binary.

#![allow(clippy::type_complexity)]

pub mod cli;
pub mod coding;
pub mod constructions;
pub mod corpus;
pub mod exact;
pub mod functions;
pub mod machines;
pub mod reductions;
pub mod weihrauch;

use thiserror::Error;

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Error)]
pub enum ExactError {
    #[error("multiplication requires magnitude bounds on both operand names")]
    MissingMagnitudeBound,
    #[error("ceil_log2 of non-positive value {0}")]
    NonPositiveLog(exact::Dyadic),
    #[error("cannot parse dyadic from {0:?} (expected \"m*2^e\")")]
    ParseDyadic(String),
}

/// Errors from the machine universe.
#[derive(Debug, Error)]
pub enum MachineError {
    #[error("program has no instructions")]
    EmptyProgram,
    #[error("jump target {target} out of bounds in instruction {index} (program length {len})")]
    JumpOutOfBounds { index: usize, target: usize, len: usize },
    #[error("halt output {0} is not a bit")]
    BadHaltValue(u64),
    #[error("cannot parse instruction line {line}: {text:?}")]
    ParseInstruction { line: usize, text: String },
}

/// Errors from function spaces and their evaluation realizers.
#[derive(Debug, Error)]
pub enum FunctionError {
    #[error("piecewise-linear breakpoints must start at x=0, end at x=1, strictly increasing")]
    BadBreakpoints,
    #[error("argument certified outside [0,1]")]
    OutsideDomain,
    #[error("interval {0} not contained in [0,1]")]
    IntervalOutsideDomain(exact::Interval),
}

/// Errors from the named constructions.
#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("sign of f at {at} not certifiable within level budget {budget}")]
    SignUncertifiable { at: String, budget: u32 },
    #[error("precondition f(0)*f(1) < 0 not certifiable within level budget {budget}")]
    PreconditionUnverifiable { budget: u32 },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Function(#[from] FunctionError),
}

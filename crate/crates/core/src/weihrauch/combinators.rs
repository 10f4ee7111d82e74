//! Lattice combinators: parallelization, jump, and choice on the naturals.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::coding::nat;

use super::name::{seq_project, seq_tupling, Name};
use super::problem::{DomainVerdict, Problem, Verdict};

/// Exclusion-scan horizon used by the choice verifier.
const CN_VERIFY_SCAN: u64 = 4096;
/// How many components the parallelized domain check samples.
const PAR_DOMAIN_SAMPLE: u64 = 4;

/// Lifts a problem to countable products: an instance is a tupled sequence
/// of instances, the oracle answers componentwise at the shared stage, and
/// the verifier checks components `0..=level`.
pub fn parallelize(g: &Problem) -> Problem {
    let g1 = g.clone();
    let g2 = g.clone();
    let g3 = g.clone();
    Problem::new(
        format!("par({})", g.id()),
        move |x, budget| {
            let mut out = DomainVerdict::Ok;
            for k in 0..PAR_DOMAIN_SAMPLE {
                match g1.domain_check(&seq_project(x, k), budget) {
                    DomainVerdict::Violated => return DomainVerdict::Violated,
                    DomainVerdict::Unknown => out = DomainVerdict::Unknown,
                    DomainVerdict::Ok => {}
                }
            }
            out
        },
        move |x, stage| {
            let g = g2.clone();
            let x = x.clone();
            seq_tupling(Arc::new(move |k| g.oracle(&seq_project(&x, k), stage)))
        },
        move |x, z, level| {
            let mut out = Verdict::Accepted;
            for k in 0..=level as u64 {
                match g3.verify(&seq_project(x, k), &seq_project(z, k), level) {
                    Verdict::Rejected => return Verdict::Rejected,
                    Verdict::Unknown => out = Verdict::Unknown,
                    Verdict::Accepted => {}
                }
            }
            out
        },
    )
}

/// The jump: the instance arrives as a sequence of names promised to
/// converge positionwise to a name in the sense of `f`. The stage-`s`
/// oracle treats the `s`-th approximation as settled; the verifier consults
/// the approximation at its level budget and abstains while the input is
/// still visibly moving.
pub fn jump(f: &Problem) -> Problem {
    let f1 = f.clone();
    let f2 = f.clone();
    Problem::new(
        format!("jump({})", f.id()),
        |_x, _budget| DomainVerdict::Ok, // convergence promise is not checkable
        move |x, stage| f1.oracle(&seq_project(x, stage), stage),
        move |x, z, level| {
            let settle = level as u64;
            let cur = seq_project(x, settle);
            if settle > 0 {
                let prev = seq_project(x, settle - 1);
                if !cur.agrees_with(&prev, level as u64 + 1) {
                    return Verdict::Unknown;
                }
            }
            f2.verify(&cur, z, level)
        },
    )
}

/// Outcome of a staged run of choice on the naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CnOutcome {
    pub answer: u64,
    pub mind_changes: u64,
}

/// Choice on the naturals, run for `stage` steps of the exclusion
/// enumeration (`0` = no report, `n+1` = "`n` is excluded").
///
/// At every stage the answer is the least natural not yet excluded; the
/// mind-change count is the number of revisions so far. Under the promise
/// that some natural is never excluded, the answer stabilizes with finitely
/// many mind changes; a violated promise shows up only as the count growing
/// with the budget.
pub fn cn_solve(excluded: &Name, stage: u64) -> CnOutcome {
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    let mut answer = 0u64;
    let mut mind_changes = 0u64;
    for k in 0..stage {
        let report = excluded.at_u64(k);
        if report == nat(0) {
            continue;
        }
        let n = &report - 1u32;
        if let Some(n) = n.to_u64() {
            seen.insert(n);
            if n == answer {
                while seen.contains(&answer) {
                    answer += 1;
                }
                mind_changes += 1;
            }
        }
    }
    CnOutcome {
        answer,
        mind_changes,
    }
}

/// Choice on the naturals as a registered problem. The oracle answers with
/// the constant name of the current survivor; the verifier re-scans the
/// exclusion stream up to a fixed horizon.
pub fn cn_problem() -> Problem {
    Problem::new(
        "cn",
        |_x, _budget| DomainVerdict::Ok, // the survivor promise is not checkable
        |x, stage| Name::constant(nat(cn_solve(x, stage).answer)),
        |x, z, _level| {
            let chosen = z.at_u64(0);
            if chosen.to_u64().is_none() {
                return Verdict::Rejected;
            }
            let target = &chosen + 1u32;
            for k in 0..CN_VERIFY_SCAN {
                if x.at_u64(k) == target {
                    return Verdict::Rejected;
                }
            }
            Verdict::Accepted
        },
    )
}

/// The identity problem: the oracle echoes the instance, the verifier
/// compares an initial segment.
pub fn identity_problem() -> Problem {
    Problem::new(
        "id",
        |_x, _budget| DomainVerdict::Ok,
        |x, _stage| x.clone(),
        |x, z, level| {
            if z.agrees_with(x, level as u64 + 1) {
                Verdict::Accepted
            } else {
                Verdict::Rejected
            }
        },
    )
}

/// An eventually-constant sequence-of-names instance for jump/lim corpora:
/// approximations settle to `target` from `settle_at` on, earlier ones are
/// perturbed.
pub fn settling_input(target: &Name, settle_at: u64) -> Name {
    let target = target.clone();
    seq_tupling(Arc::new(move |k| {
        if k >= settle_at {
            target.clone()
        } else {
            let t = target.clone();
            Name::from_fn(move |pos| t.at(pos) + nat(k + 1))
        }
    }))
}

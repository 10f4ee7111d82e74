//! The registered problems, each with its documented instance coding.
//!
//! Instance codings (all positions/values are naturals, see the module docs
//! for the shared pairing and dyadic codes):
//!
//! - monotone convergence: position `0` carries the coded dyadic bound,
//!   position `n+1` the coded `n`-th term of a nondecreasing dyadic
//!   sequence; solutions are real names.
//! - limit: position `<k, j>` carries the `k`-th approximation's value at
//!   `j`, promised positionwise convergent; solutions are plain names.
//! - tree path: position `code(w)` carries `member(w)` as a bit; solutions
//!   carry path bits positionwise.
//! - cluster point: position `<n, p>` carries the coded level-`p`
//!   approximation of the `n`-th term of a `[0,1]` sequence; solutions are
//!   real names.
//! - zero / maximum: instances are enclosure-function names (tagged query
//!   tables, see `cfunc_to_name`); solutions are real names of points.

use num_traits::ToPrimitive;

use crate::coding::{decode_dyadic, decode_word, encode_dyadic, encode_word, nat};
use crate::constructions::{argmax_point, bwt_cluster_stage, max_value, zero_point, TreePredicate};
use crate::exact::{Dyadic, Interval};

use super::name::{name_to_cfunc, name_to_creal_seq, seq_project, Name};
use super::problem::{DomainVerdict, Problem, Verdict};

/// Stages the monotone-convergence verifier scans before judging.
const MCT_VERIFY_STAGES: u64 = 2048;
/// Approximation index at which the limit verifier reads the settled input.
const LIM_VERIFY_SETTLE: u64 = 512;
/// Node budget for leftmost-path searches.
const WKL_NODE_BUDGET: usize = 1 << 14;
/// How many leading terms the cluster-point verifier samples.
const BWT_VERIFY_TERMS: usize = 1024;
/// Matches within the sample needed to accept a cluster point.
const BWT_VERIFY_HITS: usize = 8;
/// Precision cap for stage-driven point searches.
const POINT_LEVEL_CAP: u64 = 40;

fn mct_term(x: &Name, n: u64) -> Dyadic {
    decode_dyadic(&x.at_u64(n + 1))
}

fn mct_bound(x: &Name) -> Dyadic {
    decode_dyadic(&x.at_u64(0))
}

/// Builds a monotone-convergence instance from explicit dyadic terms.
pub fn mct_instance(terms: impl Fn(u64) -> Dyadic + Send + Sync + 'static, bound: Dyadic) -> Name {
    Name::from_fn(move |pos| {
        if let Some(p) = pos.to_u64() {
            if p == 0 {
                return encode_dyadic(&bound);
            }
            return encode_dyadic(&terms(p - 1));
        }
        nat(0)
    })
}

/// The supremum of a monotone bounded sequence, stage semantics: the oracle
/// answers the stage-truncated maximum, which climbs to the true supremum.
pub fn mct_problem() -> Problem {
    Problem::new(
        "mct",
        |x, budget| {
            let bound = mct_bound(x);
            let horizon = budget.min(64);
            let mut prev = mct_term(x, 0);
            for n in 0..horizon {
                let cur = mct_term(x, n);
                if cur < prev || cur > bound {
                    return DomainVerdict::Violated;
                }
                prev = cur;
            }
            DomainVerdict::Ok
        },
        |x, stage| {
            let mut best = mct_term(x, 0);
            for n in 1..=stage {
                let cur = mct_term(x, n);
                if cur > best {
                    best = cur;
                }
            }
            Name::constant(encode_dyadic(&best))
        },
        |x, z, level| {
            let eps = Dyadic::two_pow(-(level as i64));
            let zv = decode_dyadic(&z.at_u64(level as u64));
            let mut seen_max = mct_term(x, 0);
            for n in 0..MCT_VERIFY_STAGES {
                let term = mct_term(x, n);
                if term > &zv + &(&eps + &eps) {
                    // some term certifiably exceeds the candidate
                    return Verdict::Rejected;
                }
                if term > seen_max {
                    seen_max = term;
                }
            }
            if seen_max >= &zv - &(&eps + &eps) {
                Verdict::Accepted
            } else {
                Verdict::Unknown
            }
        },
    )
}

/// The limit map on Baire space: the instance is a convergent sequence of
/// names, the oracle reports the stage-th approximation pointwise.
pub fn lim_problem() -> Problem {
    Problem::new(
        "lim",
        |_x, _budget| DomainVerdict::Ok, // convergence promise not checkable
        seq_project,
        |x, z, level| {
            let settled = seq_project(x, LIM_VERIFY_SETTLE);
            let probe = seq_project(x, LIM_VERIFY_SETTLE - 1);
            if !settled.agrees_with(&probe, level as u64 + 1) {
                return Verdict::Unknown;
            }
            if z.agrees_with(&settled, level as u64 + 1) {
                Verdict::Accepted
            } else {
                Verdict::Rejected
            }
        },
    )
}

fn name_tree(x: &Name) -> TreePredicate {
    let x = x.clone();
    TreePredicate::from_fn(move |w| x.at(&encode_word(w)) == nat(1))
}

/// Builds a tree-path instance from a membership predicate.
pub fn wkl_instance(tree: &TreePredicate) -> Name {
    let tree = tree.clone();
    Name::from_fn(move |pos| {
        let w = decode_word(pos);
        if tree.member(&w) {
            nat(1)
        } else {
            nat(0)
        }
    })
}

/// Infinite-path search in a binary tree: the stage-`s` oracle reports the
/// leftmost node surviving at depth `s` (capped), zero-padded to a path.
pub fn wkl_problem() -> Problem {
    Problem::new(
        "wkl",
        |x, budget| {
            let tree = name_tree(x);
            if !tree.member(&[]) {
                return DomainVerdict::Violated;
            }
            // prefix closure on all words up to a small depth
            let depth = budget.min(5) as usize;
            let mut words = vec![vec![]];
            for _ in 0..depth {
                let mut next = Vec::new();
                for w in &words {
                    for b in [false, true] {
                        let mut ext = w.clone();
                        ext.push(b);
                        if tree.member(&ext) && !tree.member(w) {
                            return DomainVerdict::Violated;
                        }
                        next.push(ext);
                    }
                }
                words = next;
            }
            // the tree must still be alive at the probed depth
            let alive_depth = budget.min(12) as usize;
            if name_tree(x).leftmost_member(alive_depth, WKL_NODE_BUDGET).is_none() {
                return DomainVerdict::Violated;
            }
            DomainVerdict::Ok
        },
        |x, stage| {
            let depth = stage.min(256) as usize;
            let word = name_tree(x)
                .leftmost_member(depth, WKL_NODE_BUDGET)
                .unwrap_or_default();
            Name::from_fn(move |pos| {
                pos.to_usize()
                    .and_then(|i| word.get(i).copied())
                    .map(|b| nat(b as u64))
                    .unwrap_or_else(|| nat(0))
            })
        },
        |x, z, level| {
            let tree = name_tree(x);
            let mut w = Vec::new();
            for i in 0..=(level as u64).min(64) {
                if !tree.member(&w) {
                    return Verdict::Rejected;
                }
                w.push(z.at_u64(i) == nat(1));
            }
            if tree.member(&w) {
                Verdict::Accepted
            } else {
                Verdict::Rejected
            }
        },
    )
}

/// Cluster points of `[0,1]` sequences, judged by stage-truncated counting.
pub fn bwt_problem() -> Problem {
    Problem::new(
        "bwt",
        |x, budget| {
            // terms must look like [0,1] reals at a coarse level
            let seq = name_to_creal_seq(x);
            let slack = Dyadic::new(3, -2);
            for n in 0..budget.min(16) as usize {
                let q = seq(n).approx(4);
                if q < -slack.clone() || q > &Dyadic::one() + &slack {
                    return DomainVerdict::Violated;
                }
            }
            DomainVerdict::Ok
        },
        |x, stage| {
            let seq = name_to_creal_seq(x);
            Name::from_fn(move |pos| {
                let level = pos.to_u32().unwrap_or(48).min(48);
                encode_dyadic(&bwt_cluster_stage(&seq, stage as usize, level))
            })
        },
        |x, z, level| {
            let seq = name_to_creal_seq(x);
            let target = decode_dyadic(&z.at_u64(level as u64 + 2));
            let eps = &Dyadic::two_pow(-(level as i64)) + &Dyadic::two_pow(-(level as i64 + 1));
            let mut hits = 0usize;
            for n in 0..BWT_VERIFY_TERMS {
                let q = seq(n).approx(level + 2);
                if (&q - &target).abs() <= eps {
                    hits += 1;
                    if hits >= BWT_VERIFY_HITS {
                        return Verdict::Accepted;
                    }
                }
            }
            // finitely many observations can refute nothing
            Verdict::Unknown
        },
    )
}

fn point_level(stage: u64) -> u32 {
    stage.min(POINT_LEVEL_CAP) as u32
}

/// Certified evaluation of a coded function at a solution name: an
/// enclosure of `f(z)` tight at `level`.
fn eval_at_solution(fname: &Name, z: &Name, level: u32) -> Interval {
    let f = name_to_cfunc(fname);
    let m = f.contraction(level);
    let q = decode_dyadic(&z.at_u64(m as u64 + 1));
    let eps = Dyadic::two_pow(-(m as i64 + 1));
    let raw = Interval::new(&q - &eps, &q + &eps);
    let clamped = raw
        .intersect(&Interval::unit())
        .unwrap_or_else(|| Interval::point(q.max(Dyadic::zero()).min(Dyadic::one())));
    f.ext(&clamped, level)
}

/// The zero problem: find a point where the function vanishes. The oracle
/// runs the pruning search for the leftmost near-zero; the verifier checks
/// `|f(z)| <= 2^-level` by certified evaluation.
pub fn zero_problem() -> Problem {
    Problem::new(
        "zero",
        |x, _budget| {
            let f = name_to_cfunc(x);
            match f.ext(&Interval::unit(), 4).certified_sign() {
                Some(_) => DomainVerdict::Violated, // range certifiably misses zero
                None => DomainVerdict::Ok,
            }
        },
        |x, stage| {
            let f = name_to_cfunc(x);
            let z = zero_point(&f, point_level(stage));
            Name::constant(encode_dyadic(&z))
        },
        |x, z, level| {
            let eps = Dyadic::two_pow(-(level as i64));
            let enc = eval_at_solution(x, z, level + 2);
            if enc.lo() >= &-eps.clone() && enc.hi() <= &eps {
                Verdict::Accepted
            } else if enc.lo() > &eps || enc.hi() < &-eps {
                Verdict::Rejected
            } else {
                Verdict::Unknown
            }
        },
    )
}

/// The maximum-point problem: find a point attaining the maximum. The
/// verifier compares a certified evaluation against an independent
/// branch-and-bound maximum at matching precision.
pub fn max_problem() -> Problem {
    Problem::new(
        "max",
        |_x, _budget| DomainVerdict::Ok, // every continuous f on [0,1] attains a max
        |x, stage| {
            let f = name_to_cfunc(x);
            let z = argmax_point(&f, point_level(stage));
            Name::constant(encode_dyadic(&z))
        },
        |x, z, level| {
            let f = name_to_cfunc(x);
            let m = max_value(&f, level + 3);
            let eps = Dyadic::two_pow(-(level as i64));
            let fine = Dyadic::two_pow(-(level as i64 + 3));
            let enc = eval_at_solution(x, z, level + 2);
            if enc.lo() >= &(&(&m + &fine) - &eps) {
                Verdict::Accepted
            } else if enc.hi() < &(&(&m - &fine) - &eps) {
                Verdict::Rejected
            } else {
                Verdict::Unknown
            }
        },
    )
}

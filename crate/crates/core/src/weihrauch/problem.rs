//! Multivalued problems with stage-semantics oracles, and the executable
//! reduction checker.
//!
//! A problem packages three total maps. The oracle plays the role of the
//! (possibly non-computable) multivalued solution operator: at stage `s` it
//! answers with a deterministic approximant, and non-computability shows up
//! as stage dependence rather than divergence. The verifier is three-valued
//! because equality of reals is undecidable: it may certify acceptance,
//! certify rejection, or abstain.

use std::fmt;
use std::sync::Arc;

use super::name::Name;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "accepted"),
            Verdict::Rejected => write!(f, "rejected"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainVerdict {
    Ok,
    Unknown,
    Violated,
}

type DomainFn = dyn Fn(&Name, u64) -> DomainVerdict + Send + Sync;
type OracleFn = dyn Fn(&Name, u64) -> Name + Send + Sync;
type VerifierFn = dyn Fn(&Name, &Name, u32) -> Verdict + Send + Sync;

/// A multivalued problem: domain check (budgeted), stage-indexed oracle,
/// and three-valued verifier of the defining property at a precision level.
#[derive(Clone)]
pub struct Problem {
    id: String,
    domain_check: Arc<DomainFn>,
    oracle: Arc<OracleFn>,
    verifier: Arc<VerifierFn>,
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        domain_check: impl Fn(&Name, u64) -> DomainVerdict + Send + Sync + 'static,
        oracle: impl Fn(&Name, u64) -> Name + Send + Sync + 'static,
        verifier: impl Fn(&Name, &Name, u32) -> Verdict + Send + Sync + 'static,
    ) -> Problem {
        Problem {
            id: id.into(),
            domain_check: Arc::new(domain_check),
            oracle: Arc::new(oracle),
            verifier: Arc::new(verifier),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain_check(&self, instance: &Name, budget: u64) -> DomainVerdict {
        (self.domain_check)(instance, budget)
    }

    pub fn oracle(&self, instance: &Name, stage: u64) -> Name {
        (self.oracle)(instance, stage)
    }

    pub fn verify(&self, instance: &Name, solution: &Name, level: u32) -> Verdict {
        (self.verifier)(instance, solution, level)
    }
}

type PreFn = dyn Fn(&Name) -> Name + Send + Sync;
type PostFn = dyn Fn(&Name, &Name) -> Name + Send + Sync;

/// A Weihrauch reduction witness `f <= g`: a computable pre-processor `K`
/// turning `f`-instances into `g`-instances, and a post-processor `H` that
/// sees the original instance next to the oracle answer.
#[derive(Clone)]
pub struct ReductionWitness {
    id: String,
    k_pre: Arc<PreFn>,
    h_post: Arc<PostFn>,
}

impl ReductionWitness {
    pub fn new(
        id: impl Into<String>,
        k_pre: impl Fn(&Name) -> Name + Send + Sync + 'static,
        h_post: impl Fn(&Name, &Name) -> Name + Send + Sync + 'static,
    ) -> ReductionWitness {
        ReductionWitness {
            id: id.into(),
            k_pre: Arc::new(k_pre),
            h_post: Arc::new(h_post),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn pre(&self, instance: &Name) -> Name {
        (self.k_pre)(instance)
    }

    pub fn post(&self, instance: &Name, oracle_answer: &Name) -> Name {
        (self.h_post)(instance, oracle_answer)
    }

    /// The identity witness `f <= f`.
    pub fn identity() -> ReductionWitness {
        ReductionWitness::new("identity", Name::clone, |_, y| y.clone())
    }

    /// Composite witness for `f <= h` from `f <= g` (self) and `g <= h`
    /// (`outer`): `K = K_outer . K_self`,
    /// `H(x, w) = H_self(x, H_outer(K_self(x), w))`.
    pub fn compose(&self, outer: &ReductionWitness) -> ReductionWitness {
        let inner = self.clone();
        let outer = outer.clone();
        let inner2 = self.clone();
        let outer2 = outer.clone();
        ReductionWitness::new(
            format!("{};{}", self.id, outer.id),
            move |x| outer.pre(&inner.pre(x)),
            move |x, w| inner2.post(x, &outer2.post(&inner2.pre(x), w)),
        )
    }
}

/// One instance's outcome inside a reduction check.
#[derive(Clone, Debug)]
pub struct ReduceRow {
    pub index: usize,
    pub domain: DomainVerdict,
    /// `None` when the instance was skipped on a domain violation.
    pub verdict: Option<Verdict>,
}

/// Outcome of running a witness over an instance corpus.
#[derive(Clone, Debug)]
pub struct ReduceReport {
    pub witness: String,
    pub from: String,
    pub to: String,
    pub level: u32,
    pub stage: u64,
    pub rows: Vec<ReduceRow>,
}

impl ReduceReport {
    /// Every checked instance accepted and none skipped.
    pub fn all_accepted(&self) -> bool {
        !self.rows.is_empty()
            && self
                .rows
                .iter()
                .all(|r| r.verdict == Some(Verdict::Accepted))
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == Some(v)).count()
    }
}

/// Runs the reduction `f <= g` claimed by `witness` on each instance:
/// `y = g.oracle(K(x), stage)`, `z = H(x, y)`, then `f.verify(x, z, level)`.
/// Instances failing `f`'s domain check are skipped with a diagnostic row.
pub fn reduce_check(
    f: &Problem,
    g: &Problem,
    witness: &ReductionWitness,
    instances: &[Name],
    level: u32,
    stage: u64,
) -> ReduceReport {
    let rows = instances
        .iter()
        .enumerate()
        .map(|(index, x)| {
            let domain = f.domain_check(x, stage);
            if domain == DomainVerdict::Violated {
                return ReduceRow {
                    index,
                    domain,
                    verdict: None,
                };
            }
            let y = g.oracle(&witness.pre(x), stage);
            let z = witness.post(x, &y);
            ReduceRow {
                index,
                domain,
                verdict: Some(f.verify(x, &z, level)),
            }
        })
        .collect();
    ReduceReport {
        witness: witness.id().to_string(),
        from: f.id().to_string(),
        to: g.id().to_string(),
        level,
        stage,
        rows,
    }
}

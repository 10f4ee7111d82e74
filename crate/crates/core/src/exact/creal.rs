//! Computable reals as rapid Cauchy names.
//!
//! A `CReal` is a total map from a precision level `n` to a dyadic `q_n`
//! with `|x - q_n| <= 2^-n`. Arithmetic produces new names that query their
//! operands at shifted levels; multiplication additionally needs a dyadic
//! magnitude bound stored with each operand, which keeps every operation
//! total (no search for a bound at query time).
//!
//! Approximation queries are memoized behind a mutex; the cache is the only
//! mutable state and is never observable.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use super::dyadic::Dyadic;
use crate::ExactError;

/// Level-indexed rapid Cauchy name of a real number.
#[derive(Clone)]
pub struct CReal {
    inner: Arc<Inner>,
}

struct Inner {
    compute: Box<dyn Fn(u32) -> Dyadic + Send + Sync>,
    cache: Mutex<BTreeMap<u32, Dyadic>>,
    /// Dyadic bound with `|x| <= bound`, when known. Required for `mul`.
    bound: Option<Dyadic>,
}

/// Shared handle for an indexed sequence of reals.
pub type CRealSeq = Arc<dyn Fn(usize) -> CReal + Send + Sync>;

/// Outcome of a finite-precision comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialOrder {
    Less,
    Greater,
    Unknown,
}

impl CReal {
    pub fn from_fn(compute: impl Fn(u32) -> Dyadic + Send + Sync + 'static) -> CReal {
        CReal {
            inner: Arc::new(Inner {
                compute: Box::new(compute),
                cache: Mutex::new(BTreeMap::new()),
                bound: None,
            }),
        }
    }

    pub fn from_fn_bounded(
        compute: impl Fn(u32) -> Dyadic + Send + Sync + 'static,
        bound: Dyadic,
    ) -> CReal {
        CReal {
            inner: Arc::new(Inner {
                compute: Box::new(compute),
                cache: Mutex::new(BTreeMap::new()),
                bound: Some(bound),
            }),
        }
    }

    pub fn from_dyadic(d: Dyadic) -> CReal {
        let bound = d.abs();
        let v = d.clone();
        CReal::from_fn_bounded(move |_| v.clone(), bound)
    }

    pub fn from_int(v: i64) -> CReal {
        CReal::from_dyadic(Dyadic::from_int(v))
    }

    pub fn zero() -> CReal {
        CReal::from_dyadic(Dyadic::zero())
    }

    /// The dyadic `q_level` with `|x - q_level| <= 2^-level`.
    pub fn approx(&self, level: u32) -> Dyadic {
        if let Some(hit) = self.inner.cache.lock().unwrap().get(&level) {
            return hit.clone();
        }
        let v = (self.inner.compute)(level);
        self.inner
            .cache
            .lock()
            .unwrap()
            .entry(level)
            .or_insert_with(|| v.clone());
        v
    }

    /// Enclosure `[q - 2^-level, q + 2^-level]` of the value.
    pub fn enclosure(&self, level: u32) -> super::Interval {
        let q = self.approx(level);
        let eps = Dyadic::two_pow(-(level as i64));
        super::Interval::new(&q - &eps, &q + &eps)
    }

    pub fn magnitude_bound(&self) -> Option<&Dyadic> {
        self.inner.bound.as_ref()
    }

    /// Same value, annotated with a caller-supplied magnitude bound.
    pub fn with_bound(&self, bound: Dyadic) -> CReal {
        let src = self.clone();
        CReal::from_fn_bounded(move |n| src.approx(n), bound)
    }

    pub fn add(&self, other: &CReal) -> CReal {
        let x = self.clone();
        let y = other.clone();
        let bound = join_bounds(self, other, |a, b| a + b);
        with_optional_bound(move |n| &x.approx(n + 1) + &y.approx(n + 1), bound)
    }

    pub fn sub(&self, other: &CReal) -> CReal {
        let x = self.clone();
        let y = other.clone();
        let bound = join_bounds(self, other, |a, b| a + b);
        with_optional_bound(move |n| &x.approx(n + 1) - &y.approx(n + 1), bound)
    }

    pub fn neg(&self) -> CReal {
        let x = self.clone();
        let bound = self.inner.bound.clone();
        with_optional_bound(move |n| -x.approx(n), bound)
    }

    pub fn abs(&self) -> CReal {
        let x = self.clone();
        let bound = self.inner.bound.clone();
        with_optional_bound(move |n| x.approx(n).abs(), bound)
    }

    /// Exact-name multiplication; both operands must carry magnitude bounds.
    pub fn mul(&self, other: &CReal) -> Result<CReal, ExactError> {
        let bx = self
            .inner
            .bound
            .clone()
            .ok_or(ExactError::MissingMagnitudeBound)?;
        let by = other
            .inner
            .bound
            .clone()
            .ok_or(ExactError::MissingMagnitudeBound)?;
        // |xy - qx qy| <= |x||y - qy| + |qy||x - qx|
        //             <= (Bx + By + 1) 2^-m  at operand level m.
        let spread = &(&bx + &by) + &Dyadic::from_int(2);
        let shift = spread.ceil_log2()?.max(0) as u32;
        let x = self.clone();
        let y = other.clone();
        Ok(CReal::from_fn_bounded(
            move |n| {
                let m = n + shift;
                &x.approx(m) * &y.approx(m)
            },
            &bx * &by,
        ))
    }

    /// Scaling by an exact dyadic, no bound required.
    pub fn scale(&self, c: &Dyadic) -> CReal {
        if c.is_zero() {
            return CReal::zero();
        }
        let shift = c.abs().ceil_log2().expect("nonzero scale").max(0) as u32;
        let x = self.clone();
        let c = c.clone();
        let bound = self.inner.bound.as_ref().map(|b| b * &c.abs());
        with_optional_bound(move |n| &x.approx(n + shift) * &c, bound)
    }

    /// Limit of a sequence along an explicit convergence modulus.
    ///
    /// Caller promise: `|x_{modulus(k)} - x_m| <= 2^-k` for every
    /// `m >= modulus(k)`. A violated promise yields an invalid name; nothing
    /// here can detect that at run time.
    pub fn limit(seq: CRealSeq, modulus: impl Fn(u32) -> usize + Send + Sync + 'static) -> CReal {
        let near = seq(modulus(1)).approx(1);
        let bound = &near.abs() + &Dyadic::from_int(2);
        CReal::from_fn_bounded(
            move |k| seq(modulus(k + 1)).approx(k + 1),
            bound,
        )
    }
}

fn with_optional_bound(
    compute: impl Fn(u32) -> Dyadic + Send + Sync + 'static,
    bound: Option<Dyadic>,
) -> CReal {
    match bound {
        Some(b) => CReal::from_fn_bounded(compute, b),
        None => CReal::from_fn(compute),
    }
}

fn join_bounds(x: &CReal, y: &CReal, f: impl Fn(&Dyadic, &Dyadic) -> Dyadic) -> Option<Dyadic> {
    match (x.inner.bound.as_ref(), y.inner.bound.as_ref()) {
        (Some(a), Some(b)) => Some(f(a, b)),
        _ => None,
    }
}

/// Finite-precision order test that never returns a false verdict.
///
/// `Less` is reported only when the level-`level` enclosures are disjoint
/// with `x` on the left, which certifies `x < y`; symmetrically for
/// `Greater`. Equal reals always stay `Unknown`.
pub fn cmp_partial(x: &CReal, y: &CReal, level: u32) -> PartialOrder {
    let eps = Dyadic::two_pow(-(level as i64));
    let qx = x.approx(level);
    let qy = y.approx(level);
    if &qx + &eps < &qy - &eps {
        PartialOrder::Less
    } else if &qy + &eps < &qx - &eps {
        PartialOrder::Greater
    } else {
        PartialOrder::Unknown
    }
}

/// A monotone nondecreasing sequence together with an upper bound.
#[derive(Clone)]
pub struct MonotoneSeq {
    terms: CRealSeq,
    bound: Dyadic,
}

impl MonotoneSeq {
    pub fn new(terms: CRealSeq, bound: Dyadic) -> MonotoneSeq {
        MonotoneSeq { terms, bound }
    }

    pub fn from_dyadics(values: Arc<dyn Fn(usize) -> Dyadic + Send + Sync>, bound: Dyadic) -> MonotoneSeq {
        MonotoneSeq {
            terms: Arc::new(move |n| CReal::from_dyadic(values(n))),
            bound,
        }
    }

    pub fn term(&self, n: usize) -> CReal {
        (self.terms)(n)
    }

    pub fn bound(&self) -> &Dyadic {
        &self.bound
    }
}

/// Stage-truncated supremum oracle for the monotone convergence problem.
///
/// Returns `max_{n <= stage} x_n` at the requested precision. The full
/// supremum is not computable in general; callers see it only through this
/// stage-indexed approximant.
pub fn mct_stage(seq: &MonotoneSeq, stage: usize, level: u32) -> Dyadic {
    let mut best = seq.term(0).approx(level);
    for n in 1..=stage {
        let q = seq.term(n).approx(level);
        if q > best {
            best = q;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    fn assert_close(q: &Dyadic, target: &Dyadic, level: i64) {
        let err = (q - target).abs();
        assert!(
            err <= Dyadic::two_pow(-level),
            "|{q} - {target}| = {err} > 2^-{level}"
        );
    }

    /// Independent oracle: 1/3 as a name via the geometric expansion
    /// 0.010101.._2, truncated with an explicit remainder bound.
    fn one_third() -> CReal {
        CReal::from_fn_bounded(
            |n| {
                let mut acc = Dyadic::zero();
                let mut k = 2i64;
                while k <= n as i64 + 2 {
                    acc = &acc + &Dyadic::two_pow(-k);
                    k += 2;
                }
                acc
            },
            Dyadic::one(),
        )
    }

    fn one_sixth() -> CReal {
        one_third().scale(&d(1, -1))
    }

    #[test]
    fn add_zero_is_identity() {
        let x = one_third();
        let sum = x.add(&CReal::zero());
        for n in [0u32, 3, 10, 20] {
            assert_close(&sum.approx(n), &x.approx(n + 4), n as i64 - 1);
        }
    }

    #[test]
    fn third_plus_sixth_is_half() {
        // Exact rational oracle: 1/3 + 1/6 = 1/2.
        let sum = one_third().add(&one_sixth());
        let q = sum.approx(10);
        assert_close(&q, &d(1, -1), 10);
    }

    #[test]
    fn x_minus_x_is_zero() {
        let x = one_third();
        let diff = x.sub(&x);
        for n in [0u32, 5, 17, 40] {
            assert_close(&diff.approx(n), &Dyadic::zero(), n as i64);
        }
    }

    #[test]
    fn mul_needs_bounds() {
        let no_bound = CReal::from_fn(|_| Dyadic::zero());
        assert!(matches!(
            no_bound.mul(&CReal::zero()),
            Err(ExactError::MissingMagnitudeBound)
        ));
        // (1/3)*(1/2) = 1/6
        let prod = one_third().mul(&CReal::from_dyadic(d(1, -1))).unwrap();
        assert_close(&prod.approx(12), &one_sixth().approx(20), 11);
    }

    #[test]
    fn rapid_cauchy_property_of_derived_names() {
        let x = one_third();
        let y = x.add(&x).mul(&CReal::from_dyadic(d(3, -2)))
            .unwrap()
            .sub(&one_sixth());
        for n in 0..=32u32 {
            for m in (n..=32).step_by(5) {
                let gap = (&y.approx(n) - &y.approx(m)).abs();
                let allowed = &Dyadic::two_pow(-(n as i64)) + &Dyadic::two_pow(-(m as i64));
                assert!(gap <= allowed, "levels {n},{m}: gap {gap}");
            }
        }
    }

    #[test]
    fn cmp_partial_never_lies() {
        let x = CReal::from_dyadic(d(0, 0));
        let y = CReal::from_dyadic(d(1, 0));
        assert_eq!(cmp_partial(&x, &y, 3), PartialOrder::Less);
        assert_eq!(cmp_partial(&y, &x, 3), PartialOrder::Greater);
        assert_eq!(cmp_partial(&x, &x, 40), PartialOrder::Unknown);
        // Gap below the discrimination threshold stays Unknown.
        let close = CReal::from_dyadic(&d(1, -1) + &Dyadic::two_pow(-20));
        assert_eq!(
            cmp_partial(&CReal::from_dyadic(d(1, -1)), &close, 4),
            PartialOrder::Unknown
        );
        assert_eq!(
            cmp_partial(&CReal::from_dyadic(d(1, -1)), &close, 25),
            PartialOrder::Less
        );
    }

    #[test]
    fn limit_of_constant_sequence() {
        let x = one_third();
        let xc = x.clone();
        let seq: CRealSeq = Arc::new(move |_| xc.clone());
        let lim = CReal::limit(seq, |_| 0);
        assert_close(&lim.approx(14), &x.approx(20), 14);
    }

    #[test]
    fn limit_of_geometric_tail() {
        // x_n = 1 - 2^-n with modulus k -> k+1 converges to 1.
        let seq: CRealSeq = Arc::new(|n| {
            CReal::from_dyadic(&Dyadic::one() - &Dyadic::two_pow(-(n as i64)))
        });
        let lim = CReal::limit(seq, |k| k as usize + 1);
        assert_close(&lim.approx(20), &Dyadic::one(), 20);
    }

    #[test]
    fn limit_of_partial_geometric_sums() {
        // Partial sums of sum 2^-i converge to 2.
        let seq: CRealSeq = Arc::new(|n| {
            let mut acc = Dyadic::zero();
            for i in 0..=n as i64 {
                acc = &acc + &Dyadic::two_pow(-i);
            }
            CReal::from_dyadic(acc)
        });
        let lim = CReal::limit(seq, |k| k as usize + 1);
        assert_close(&lim.approx(24), &d(1, 1), 24);
    }

    #[test]
    fn shared_names_answer_concurrent_queries() {
        let x = one_third();
        let y = x.add(&one_sixth());
        let mut handles = Vec::new();
        for t in 0..4 {
            let y = y.clone();
            handles.push(std::thread::spawn(move || {
                for n in (t..32).step_by(4) {
                    assert_close(&y.approx(n), &d(1, -1), n as i64);
                }
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn mct_stage_behaviour() {
        let half = d(1, -1);
        let hc = half.clone();
        let constant = MonotoneSeq::from_dyadics(Arc::new(move |_| hc.clone()), Dyadic::one());
        for stage in [0usize, 1, 5, 50] {
            assert_close(&mct_stage(&constant, stage, 20), &half, 20);
        }

        // Monotonicity in the stage, up to 2*2^-level.
        let ramp = MonotoneSeq::from_dyadics(
            Arc::new(|n| &Dyadic::one() - &Dyadic::two_pow(-(n as i64))),
            Dyadic::one(),
        );
        let slack = Dyadic::two_pow(-9);
        let mut prev = mct_stage(&ramp, 0, 10);
        for stage in 1..32 {
            let cur = mct_stage(&ramp, stage, 10);
            assert!(&cur + &slack >= prev);
            prev = cur;
        }
        assert!(mct_stage(&ramp, 200, 10) <= &Dyadic::one() + &Dyadic::two_pow(-10));
    }
}

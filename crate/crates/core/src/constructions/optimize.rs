//! Interval branch-and-bound over `[0,1]`: certified maximum values,
//! stage-semantics argmax/zero points, and approximate fixed points in
//! dimension one.

use crate::exact::{Dyadic, Interval};
use crate::functions::CFunc;

/// Result of one branch-and-bound refinement pass.
struct BnbOutcome {
    /// Certified lower bound on `max f`.
    lower: Dyadic,
    /// Certified upper bound on `max f`.
    upper: Dyadic,
    /// Settled intervals still explaining the maximum, in left-to-right
    /// order, paired with the upper end of their enclosure.
    candidates: Vec<(Interval, Dyadic)>,
}

/// Splits until every surviving interval's enclosure is tight at `target`.
///
/// Pruning drops an interval as soon as its enclosure tops out below the
/// best certified lower bound, which no argmax point can survive. Intervals
/// whose enclosure is already tight stop splitting (a plateau settles at
/// once regardless of its width), so the worklist stays small for
/// piecewise-linear instances.
fn branch_and_bound(f: &CFunc, target: u32) -> BnbOutcome {
    let tight = Dyadic::two_pow(-(target as i64) + 1);
    let mut active = vec![Interval::unit()];
    let mut settled: Vec<(Interval, Interval)> = Vec::new();
    let mut lower: Option<Dyadic> = None;
    // Depth is bounded by the contraction modulus; the guard only protects
    // against a CFunc whose modulus lies.
    let depth_guard = f.contraction(target) + 8;

    for _depth in 0..=depth_guard {
        if active.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for interval in active {
            let enc = f.ext(&interval, target);
            let lo = enc.lo().clone();
            lower = Some(match lower.take() {
                Some(cur) => cur.max(lo),
                None => lo,
            });
            if enc.width() <= tight {
                settled.push((interval, enc));
            } else {
                next.push((interval, enc));
            }
        }
        let best = lower.clone().expect("at least one interval evaluated");
        active = Vec::new();
        for (interval, enc) in next {
            if enc.hi() < &best {
                continue;
            }
            let (l, r) = interval.split();
            active.push(l);
            active.push(r);
        }
    }
    let best = lower.expect("at least one interval evaluated");
    settled.retain(|(_, enc)| enc.hi() >= &best);
    // settling order depends on depth; report candidates left to right
    settled.sort_by(|(a, _), (b, _)| a.lo().cmp(b.lo()));
    let upper = settled
        .iter()
        .map(|(_, enc)| enc.hi().clone())
        .max()
        .unwrap_or_else(|| best.clone());
    BnbOutcome {
        lower: best,
        upper,
        candidates: settled
            .into_iter()
            .map(|(i, enc)| (i, enc.hi().clone()))
            .collect(),
    }
}

/// Dyadic within `2^-level` of `max f([0,1])`.
pub fn max_value(f: &CFunc, level: u32) -> Dyadic {
    let out = branch_and_bound(f, level + 2);
    // max lies in [lower, upper] with upper - lower <= 3*2^-(level+2)
    (&out.lower + &out.upper).half().round_at(level as i64 + 3)
}

/// Stage-semantics argmax: the midpoint of the leftmost surviving interval.
///
/// The returned point satisfies `f(x) >= max f - 2^-level`; as the level
/// grows the candidates concentrate on the true argmax set.
pub fn argmax_point(f: &CFunc, level: u32) -> Dyadic {
    let out = branch_and_bound(f, level + 2);
    out.candidates
        .first()
        .map(|(i, _)| i.midpoint())
        .unwrap_or_else(Dyadic::zero)
}

/// Stage-semantics zero point via the maxima of `-|f|`: a point with
/// `|f(x)| <= 2^-level`, leftmost among the surviving candidates.
pub fn zero_point(f: &CFunc, level: u32) -> Dyadic {
    argmax_point(&f.neg_abs(), level)
}

/// Approximate fixed point of `f: [0,1] -> [0,1]`.
///
/// Always returns an `x` with `|f(x) - x| <= 2^-level` (up to the domain
/// slack of the instance), by a certified-value binary search on
/// `g(x) = f(x) - x`, which runs from `g(0) >= 0 >= g(1)`. When strict signs
/// of `g` at both endpoints are certified, the trisection root finder takes
/// over and the result encloses an exact fixed point.
pub fn brouwer_dim1(f: &CFunc, level: u32) -> Dyadic {
    let g = diff_from_identity(f);
    // Exact fixed-point route when the endpoint signs are strict.
    let strict_budget = level + 8;
    if let (Some(1), Some(-1)) = (
        super::ivt::certify_sign(&g, &Dyadic::zero(), strict_budget),
        super::ivt::certify_sign(&g, &Dyadic::one(), strict_budget),
    ) {
        let enclosure_level = g.contraction(level) + 1;
        if let Ok(enclosure) = super::ivt::ivt_trisect(&g, enclosure_level) {
            return enclosure.midpoint();
        }
    }

    // General route: midpoint-value binary search.
    let p = level + 3;
    let value = |x: &Dyadic| g.at_point(x, p).midpoint();
    let stop = Dyadic::two_pow(-(g.contraction(level + 2) as i64));
    let mut a = Dyadic::zero();
    let mut b = Dyadic::one();
    while &b - &a > stop {
        let m = (&a + &b).half();
        if value(&m).signum() >= 0 {
            a = m;
        } else {
            b = m;
        }
    }
    a
}

/// `g(x) = f(x) - x` as an enclosure function.
fn diff_from_identity(f: &CFunc) -> CFunc {
    let f1 = f.clone();
    let f2 = f.clone();
    CFunc::new(
        move |interval, level| f1.ext(interval, level + 1).sub(interval),
        move |level| f2.contraction(level + 1).max(level + 1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::PLFunc;

    fn cf(parts: &[((i64, i64), (i64, i64))]) -> CFunc {
        CFunc::from_plf(&PLFunc::from_parts(parts).unwrap())
    }

    fn assert_close(a: &Dyadic, b: &Dyadic, level: i64) {
        let err = (a - b).abs();
        assert!(err <= Dyadic::two_pow(-level), "|{a} - {b}| > 2^-{level}");
    }

    #[test]
    fn tent_max_is_one() {
        let tent = cf(&[((0, 0), (0, 0)), ((1, -1), (1, 0)), ((1, 0), (0, 0))]);
        assert_close(&max_value(&tent, 30), &Dyadic::one(), 30);
    }

    #[test]
    fn constant_max_is_the_constant() {
        let c = cf(&[((0, 0), (3, -2)), ((1, 0), (3, -2))]);
        assert_close(&max_value(&c, 30), &Dyadic::new(3, -2), 30);
    }

    #[test]
    fn plateau_max() {
        // max 1/2 attained on the middle plateau
        let f = cf(&[
            ((0, 0), (0, 0)),
            ((1, -2), (1, -1)),
            ((3, -2), (1, -1)),
            ((1, 0), (0, 0)),
        ]);
        assert_close(&max_value(&f, 30), &Dyadic::new(1, -1), 30);
        // argmax lands on the plateau, up to the certification slack
        let x = argmax_point(&f, 20);
        let slack = Dyadic::two_pow(-18);
        assert!(x >= &Dyadic::new(1, -2) - &slack && x <= &Dyadic::new(3, -2) + &slack);
    }

    #[test]
    fn argmax_at_interior_breakpoint() {
        let f = cf(&[((0, 0), (0, 0)), ((1, -2), (1, 0)), ((1, 0), (0, 0))]);
        let x = argmax_point(&f, 20);
        assert_close(&x, &Dyadic::new(1, -2), 18);
    }

    #[test]
    fn zero_point_finds_zero() {
        let f = cf(&[((0, 0), (-1, 0)), ((1, 0), (1, 0))]);
        let z = zero_point(&f, 20);
        assert_close(&z, &Dyadic::new(1, -1), 18);
    }

    #[test]
    fn fixed_point_of_constant_map() {
        let f = cf(&[((0, 0), (1, -1)), ((1, 0), (1, -1))]);
        let x = brouwer_dim1(&f, 20);
        assert_close(&x, &Dyadic::new(1, -1), 19);
    }

    #[test]
    fn identity_fixes_everything() {
        let f = cf(&[((0, 0), (0, 0)), ((1, 0), (1, 0))]);
        let x = brouwer_dim1(&f, 20);
        // any point is fixed; check the contract |f(x) - x| <= 2^-20
        let fx = f.at_point(&x, 24);
        let err = (&fx.midpoint() - &x).abs();
        assert!(err <= Dyadic::two_pow(-20));
    }

    #[test]
    fn crossing_fixed_point_by_linear_solve() {
        // f = 3/4 - x/2 crosses the diagonal at x = 1/2
        let f = cf(&[((0, 0), (3, -2)), ((1, 0), (1, -2))]);
        let x = brouwer_dim1(&f, 20);
        assert_close(&x, &Dyadic::new(1, -1), 19);
    }
}

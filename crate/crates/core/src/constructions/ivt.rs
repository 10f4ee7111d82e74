//! Certified root localization by trisection.
//!
//! Bisection stalls when the midpoint happens to be a zero: no finite
//! enclosure ever certifies its sign. Trisection tests two points near the
//! thirds of the current interval and keeps a sub-interval of roughly 2/3
//! the length whose endpoint sign is certified. The four possible
//! certificates at the two test points are dovetailed over increasing
//! precision, so a zero sitting exactly on one test point never blocks
//! progress: the other test point then carries a certifiable sign.

use crate::exact::{DyRatio, Dyadic, Interval};
use crate::functions::CFunc;
use crate::ConstructionError;

/// Extra certification levels tried beyond the requested output level.
const SIGN_BUDGET_SLACK: u32 = 24;
/// Test points are snapped to a grid 10 bits below the interval width, which
/// keeps the worst-case shrink factor at `2/3 + 2^-9` per step.
const THIRD_GUARD_BITS: i64 = 10;

#[derive(Clone, Debug)]
pub struct TrisectOutcome {
    pub interval: Interval,
    pub iterations: u32,
    /// Deepest enclosure level any certificate needed.
    pub max_cert_level: u32,
}

/// Certified sign of `f` at a dyadic point, probing enclosure levels up to
/// `budget`.
pub fn certify_sign(f: &CFunc, at: &Dyadic, budget: u32) -> Option<i32> {
    let mut level = 3u32;
    loop {
        if let Some(s) = f.at_point(at, level).certified_sign() {
            return Some(s);
        }
        if level >= budget {
            return None;
        }
        level = (level + 2).min(budget);
    }
}

/// Width-`2^-level` interval with certified opposite signs of `f` at its
/// endpoints, hence containing a zero.
pub fn ivt_trisect(f: &CFunc, level: u32) -> Result<Interval, ConstructionError> {
    ivt_trisect_traced(f, level).map(|o| o.interval)
}

pub fn ivt_trisect_traced(f: &CFunc, level: u32) -> Result<TrisectOutcome, ConstructionError> {
    let budget = level + SIGN_BUDGET_SLACK;
    let sign_lo = certify_sign(f, &Dyadic::zero(), budget)
        .ok_or(ConstructionError::PreconditionUnverifiable { budget })?;
    let sign_hi = certify_sign(f, &Dyadic::one(), budget)
        .ok_or(ConstructionError::PreconditionUnverifiable { budget })?;
    if sign_lo == sign_hi {
        return Err(ConstructionError::PreconditionUnverifiable { budget });
    }

    let eps = Dyadic::two_pow(-(level as i64));
    let three = Dyadic::from_int(3);
    let mut lo = Dyadic::zero();
    let mut hi = Dyadic::one();
    let mut iterations = 0u32;
    let mut max_cert_level = 3u32;

    while &hi - &lo > eps {
        let width = &hi - &lo;
        let grid = -width.ceil_log2()? + THIRD_GUARD_BITS;
        // third >= width/3 - 2^-grid > 0 and the kept long interval has
        // length <= width*(2/3 + 2^-(THIRD_GUARD_BITS-1))
        let third = DyRatio::new(width.clone(), three.clone()).floor_at(grid);
        let c1 = &lo + &third;
        let c2 = &hi - &third;
        debug_assert!(lo < c1 && c1 < c2 && c2 < hi);

        // Dovetail sign certificates at both test points over increasing
        // precision; the first certificate fixes the next interval.
        let kept;
        let mut cert_level = level.clamp(4, 8);
        'search: loop {
            for point in [&c1, &c2] {
                if let Some(s) = f.at_point(point, cert_level).certified_sign() {
                    max_cert_level = max_cert_level.max(cert_level);
                    // A sign matching the lower endpoint moves the lower
                    // endpoint up; otherwise the upper endpoint moves down.
                    kept = Some(if s == sign_lo {
                        (point.clone(), hi.clone())
                    } else {
                        (lo.clone(), point.clone())
                    });
                    break 'search;
                }
            }
            if cert_level >= budget {
                return Err(ConstructionError::SignUncertifiable {
                    at: format!("{c1} / {c2}"),
                    budget,
                });
            }
            cert_level = (cert_level + 3).min(budget);
        }
        let (new_lo, new_hi) = kept.expect("loop exits only with a certificate");
        lo = new_lo;
        hi = new_hi;
        iterations += 1;
    }

    Ok(TrisectOutcome {
        interval: Interval::new(lo, hi),
        iterations,
        max_cert_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::PLFunc;

    fn cf(parts: &[((i64, i64), (i64, i64))]) -> CFunc {
        CFunc::from_plf(&PLFunc::from_parts(parts).unwrap())
    }

    #[test]
    fn linear_zero_at_half() {
        let f = cf(&[((0, 0), (-1, 0)), ((1, 0), (1, 0))]); // 2x - 1
        let out = ivt_trisect_traced(&f, 40).unwrap();
        assert!(out.interval.width() <= Dyadic::two_pow(-40));
        assert!(out.interval.contains(&Dyadic::new(1, -1)));
        assert!(out.iterations <= 75, "iterations = {}", out.iterations);
    }

    #[test]
    fn flat_shoulders_zero_at_half() {
        let f = cf(&[
            ((0, 0), (-1, 0)),
            ((1, -2), (-1, 0)),
            ((3, -2), (1, 0)),
            ((1, 0), (1, 0)),
        ]);
        let out = ivt_trisect(&f, 30).unwrap();
        assert!(out.contains(&Dyadic::new(1, -1)));
    }

    #[test]
    fn zero_at_one_third_hits_test_point() {
        // f(x) = 3x - 1 has its zero exactly at the first trisection ratio.
        let f = cf(&[((0, 0), (-1, 0)), ((1, 0), (2, 0))]);
        let out = ivt_trisect_traced(&f, 40).unwrap();
        let third = DyRatio::new(Dyadic::one(), Dyadic::from_int(3));
        // interval must contain 1/3: lo <= 1/3 <= hi
        assert_ne!(
            third.cmp_dyadic(out.interval.lo()),
            std::cmp::Ordering::Less
        );
        assert_ne!(
            third.cmp_dyadic(out.interval.hi()),
            std::cmp::Ordering::Greater
        );
        assert!(out.interval.width() <= Dyadic::two_pow(-40));
    }

    #[test]
    fn descending_orientation() {
        let f = cf(&[((0, 0), (1, 0)), ((1, 0), (-1, 0))]); // 1 - 2x
        let out = ivt_trisect(&f, 30).unwrap();
        assert!(out.contains(&Dyadic::new(1, -1)));
    }

    #[test]
    fn rejects_no_sign_change() {
        let f = cf(&[((0, 0), (1, 0)), ((1, 0), (1, 0))]);
        assert!(matches!(
            ivt_trisect(&f, 20),
            Err(ConstructionError::PreconditionUnverifiable { .. })
        ));
    }

    #[test]
    fn endpoint_signs_stay_certified() {
        // sign invariant: returned interval endpoints have opposite signs
        let f = cf(&[((0, 0), (-3, -2)), ((1, 0), (5, -1))]);
        let out = ivt_trisect(&f, 25).unwrap();
        let budget = 60;
        let s_lo = certify_sign(&f, out.lo(), budget).unwrap();
        let s_hi = certify_sign(&f, out.hi(), budget).unwrap();
        assert_eq!(s_lo, -1);
        assert_eq!(s_hi, 1);
    }
}

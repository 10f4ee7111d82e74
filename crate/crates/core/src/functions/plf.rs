//! Piecewise-linear functions on `[0,1]` with exact dyadic breakpoints.
//!
//! A `PLFunc` is the concrete, fully inspectable instance class behind the
//! generic enclosure interface: ranges over intervals are computed by exact
//! rational arithmetic on the breakpoint data, so the enclosures carry no
//! hidden rounding other than the final outward snap to a dyadic grid.

use serde::{Deserialize, Serialize};

use crate::exact::{CReal, DyRatio, Dyadic, Interval};
use crate::FunctionError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunc {
    points: Vec<(Dyadic, Dyadic)>,
    /// `2^slope_bits` bounds every |segment slope|.
    slope_bits: u32,
}

/// Grid level for outward rounding when a range endpoint is not dyadic.
/// Extremes attained at breakpoints (always the case on the full domain) are
/// returned exactly.
const RANGE_GRID: i64 = 64;

impl PLFunc {
    pub fn new(points: Vec<(Dyadic, Dyadic)>) -> Result<PLFunc, FunctionError> {
        if points.len() < 2
            || !points.first().unwrap().0.is_zero()
            || points.last().unwrap().0 != Dyadic::one()
        {
            return Err(FunctionError::BadBreakpoints);
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(FunctionError::BadBreakpoints);
            }
        }
        let mut slope_bits = 0u32;
        for w in points.windows(2) {
            let run = &w[1].0 - &w[0].0;
            let rise = (&w[1].1 - &w[0].1).abs();
            if rise.is_zero() {
                continue;
            }
            // smallest b with rise/run <= 2^b
            let mut b = 0i64;
            while DyRatio::new(rise.clone(), run.clone()).cmp_dyadic(&Dyadic::two_pow(b))
                == std::cmp::Ordering::Greater
            {
                b += 1;
            }
            slope_bits = slope_bits.max(b as u32);
        }
        Ok(PLFunc { points, slope_bits })
    }

    /// Convenience constructor from `(mantissa, exponent)` pairs.
    pub fn from_parts(parts: &[((i64, i64), (i64, i64))]) -> Result<PLFunc, FunctionError> {
        PLFunc::new(
            parts
                .iter()
                .map(|((xm, xe), (ym, ye))| (Dyadic::new(*xm, *xe), Dyadic::new(*ym, *ye)))
                .collect(),
        )
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    /// Exponent bound on the steepest segment: every slope is `<= 2^slope_bits`.
    pub fn slope_bits(&self) -> u32 {
        self.slope_bits
    }

    /// Exact value at a dyadic abscissa in `[0,1]`, as a ratio.
    pub fn value_at(&self, x: &Dyadic) -> DyRatio {
        debug_assert!(x >= &Dyadic::zero() && x <= &Dyadic::one());
        let seg = self
            .points
            .windows(2)
            .find(|w| x <= &w[1].0)
            .expect("x <= 1 always lands in a segment");
        let (x0, y0) = &seg[0];
        let (x1, y1) = &seg[1];
        let run = x1 - x0;
        let num = &(y0 * &run) + &(&(x - x0) * &(y1 - y0));
        DyRatio::new(num, run)
    }

    /// Exact extremes of `f` over `I` as rationals: attained at breakpoints
    /// inside `I` or at the endpoints of `I`.
    pub(crate) fn range_exact(&self, interval: &Interval) -> (DyRatio, DyRatio) {
        let mut candidates = vec![
            self.value_at(interval.lo()),
            self.value_at(interval.hi()),
        ];
        for (x, y) in &self.points {
            if x > interval.lo() && x < interval.hi() {
                candidates.push(DyRatio::from_dyadic(y.clone()));
            }
        }
        let mut min = candidates[0].clone();
        let mut max = candidates[0].clone();
        for c in candidates.iter().skip(1) {
            if c.cmp(&min) == std::cmp::Ordering::Less {
                min = c.clone();
            }
            if c.cmp(&max) == std::cmp::Ordering::Greater {
                max = c.clone();
            }
        }
        (min, max)
    }
}

/// Exact range `[min f(I), max f(I)]` of a piecewise-linear function.
///
/// Endpoints are exact dyadics whenever the extremes are attained at
/// breakpoints (always the case for `I = [0,1]`); an extreme attained
/// strictly inside a segment at a non-dyadic rational is outward-rounded at
/// `2^-64`, preserving the enclosure property.
pub fn plf_range(f: &PLFunc, interval: &Interval) -> Result<Interval, FunctionError> {
    if !Interval::unit().contains_interval(interval) {
        return Err(FunctionError::IntervalOutsideDomain(interval.clone()));
    }
    let (min, max) = f.range_exact(interval);
    let lo = min
        .to_dyadic_exact()
        .unwrap_or_else(|| min.floor_at(RANGE_GRID));
    let hi = max
        .to_dyadic_exact()
        .unwrap_or_else(|| max.ceil_at(RANGE_GRID));
    Ok(Interval::new(lo, hi))
}

/// Evaluation realizer: a valid rapid Cauchy name of `f(x)`.
///
/// The argument must be a name of a point of `[0,1]`; a name that certifies
/// a value outside the domain (beyond the `2^-n` tolerance at the probed
/// levels) is rejected.
pub fn plf_eval(f: &PLFunc, x: &CReal) -> Result<CReal, FunctionError> {
    for probe in [2u32, 8, 16] {
        let q = x.approx(probe);
        let eps = Dyadic::two_pow(-(probe as i64));
        if &q - &eps > Dyadic::one() || &q + &eps < Dyadic::zero() {
            return Err(FunctionError::OutsideDomain);
        }
    }
    let f = f.clone();
    let x = x.clone();
    let bound = {
        let (min, max) = f.range_exact(&Interval::unit());
        let lo = min.floor_at(4).abs();
        let hi = max.ceil_at(4).abs();
        &lo.max(hi) + &Dyadic::one()
    };
    Ok(CReal::from_fn_bounded(
        move |n| {
            let m = n + 2 + f.slope_bits;
            let q = x.approx(m);
            let clamped = q.max(Dyadic::zero()).min(Dyadic::one());
            // |f(x) - f(clamped)| <= 2^slope_bits * 2^-m <= 2^-(n+2)
            f.value_at(&clamped).floor_at(n as i64 + 2)
        },
        bound,
    ))
}

/// Serialization bridge: a piecewise-linear function is stored as a JSON
/// array of `[x, y]` dyadic strings.
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlfJson(Vec<(Dyadic, Dyadic)>);

impl PLFunc {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PlfJson(self.points.clone())).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<PLFunc, FunctionError> {
        let parsed: PlfJson =
            serde_json::from_str(s).map_err(|_| FunctionError::BadBreakpoints)?;
        PLFunc::new(parsed.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    fn identity() -> PLFunc {
        PLFunc::from_parts(&[((0, 0), (0, 0)), ((1, 0), (1, 0))]).unwrap()
    }

    fn tent() -> PLFunc {
        PLFunc::from_parts(&[((0, 0), (0, 0)), ((1, -1), (1, 0)), ((1, 0), (0, 0))]).unwrap()
    }

    #[test]
    fn validation_rejects_bad_breakpoints() {
        assert!(PLFunc::from_parts(&[((0, 0), (0, 0))]).is_err());
        assert!(PLFunc::from_parts(&[((0, 0), (0, 0)), ((1, -1), (0, 0))]).is_err());
        assert!(
            PLFunc::from_parts(&[((1, -2), (0, 0)), ((1, 0), (0, 0))]).is_err(),
            "must start at x=0"
        );
        // duplicate x
        assert!(PLFunc::from_parts(&[
            ((0, 0), (0, 0)),
            ((1, -1), (1, 0)),
            ((1, -1), (0, 0)),
            ((1, 0), (0, 0))
        ])
        .is_err());
    }

    #[test]
    fn eval_identity_and_tent() {
        let x = CReal::from_dyadic(d(1, -1));
        let id = plf_eval(&identity(), &x).unwrap();
        assert_eq!(id.approx(20), d(1, -1));
        let t = plf_eval(&tent(), &x).unwrap();
        let err = (&t.approx(20) - &Dyadic::one()).abs();
        assert!(err <= Dyadic::two_pow(-20));
    }

    #[test]
    fn eval_linear_interpolation_by_hand() {
        // breakpoints (0,-1), (1,1): f(1/4) = -1/2
        let f = PLFunc::from_parts(&[((0, 0), (-1, 0)), ((1, 0), (1, 0))]).unwrap();
        let v = plf_eval(&f, &CReal::from_dyadic(d(1, -2))).unwrap();
        let err = (&v.approx(24) - &d(-1, -1)).abs();
        assert!(err <= Dyadic::two_pow(-24));
    }

    #[test]
    fn eval_rejects_outside_domain() {
        let x = CReal::from_dyadic(d(3, 0));
        assert!(matches!(
            plf_eval(&identity(), &x),
            Err(FunctionError::OutsideDomain)
        ));
    }

    #[test]
    fn range_exact_cases() {
        let unit = Interval::unit();
        assert_eq!(plf_range(&tent(), &unit).unwrap(), unit.clone());
        let sub = Interval::new(d(1, -2), d(1, -1));
        assert_eq!(plf_range(&identity(), &sub).unwrap(), sub.clone());
        // plateau between 1/4 and 3/4 at y = 0 (dyadic stand-in for the
        // thirds plateau: extremes still pin to the plateau value)
        let plateau = PLFunc::from_parts(&[
            ((0, 0), (-1, 0)),
            ((1, -2), (0, 0)),
            ((3, -2), (0, 0)),
            ((1, 0), (1, 0)),
        ])
        .unwrap();
        let mid = Interval::new(d(1, -2), d(3, -2));
        assert_eq!(
            plf_range(&plateau, &mid).unwrap(),
            Interval::point(Dyadic::zero())
        );
        assert!(plf_range(&identity(), &Interval::new(d(1, -1), d(3, 0))).is_err());
    }

    #[test]
    fn range_contains_sampled_values() {
        use std::cmp::Ordering;
        let f = PLFunc::from_parts(&[
            ((0, 0), (3, -2)),
            ((1, -3), (-5, -1)),
            ((3, -2), (7, -3)),
            ((1, 0), (-1, 0)),
        ])
        .unwrap();
        let i = Interval::new(d(1, -4), d(13, -4));
        let range = plf_range(&f, &i).unwrap();
        for k in 0..=100i64 {
            // dyadic grid points x = lo + k*width/128 stay inside I
            let x = i.lo() + &(&i.width() * &d(k, -7));
            let v = f.value_at(&x);
            assert_ne!(v.cmp_dyadic(range.lo()), Ordering::Less);
            assert_ne!(v.cmp_dyadic(range.hi()), Ordering::Greater);
        }
    }

    #[test]
    fn json_round_trip() {
        let f = tent();
        let s = f.to_json();
        assert_eq!(PLFunc::from_json(&s).unwrap(), f);
        assert!(s.contains("1*2^-1"));
    }
}

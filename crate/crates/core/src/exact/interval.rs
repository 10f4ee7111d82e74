//! Closed dyadic intervals, the enclosure currency of the whole crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::dyadic::Dyadic;

/// A closed interval `[lo, hi]` with exact dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    /// Invariant: `lo <= hi`; violating it is a programming error.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(v: Dyadic) -> Interval {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn unit() -> Interval {
        Interval::new(Dyadic::zero(), Dyadic::one())
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(Interval::new(lo, hi))
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Exact negation `[-hi, -lo]`.
    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    /// Exact image under absolute value.
    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            Interval::new(Dyadic::zero(), (-&self.lo).max(self.hi.clone()))
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    /// Both halves split at the exact dyadic midpoint.
    pub fn split(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (
            Interval::new(self.lo.clone(), m.clone()),
            Interval::new(m, self.hi.clone()),
        )
    }

    /// Outward rounding of both endpoints onto the `2^-level` grid.
    pub fn outward(&self, level: i64) -> Interval {
        Interval::new(self.lo.floor_at(level), self.hi.ceil_at(level))
    }

    /// True sign verdict if the whole interval is on one side of zero.
    pub fn certified_sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    #[test]
    fn widths_and_midpoints_are_exact() {
        let i = Interval::new(d(1, -2), d(3, -2));
        assert_eq!(i.width(), d(1, -1));
        assert_eq!(i.midpoint(), d(1, -1));
    }

    #[test]
    fn abs_straddling_zero() {
        let i = Interval::new(d(-3, -2), d(1, -1));
        assert_eq!(i.abs(), Interval::new(Dyadic::zero(), d(3, -2)));
    }

    #[test]
    fn outward_rounding_contains() {
        let i = Interval::new(d(5, -4), d(7, -4));
        let o = i.outward(2);
        assert!(o.contains_interval(&i));
        assert_eq!(o, Interval::new(d(1, -2), d(1, -1)));
    }

    #[test]
    #[should_panic]
    fn reversed_endpoints_panic() {
        let _ = Interval::new(d(1, 0), d(0, 0));
    }
}

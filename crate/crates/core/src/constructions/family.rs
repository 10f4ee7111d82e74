//! The sequential intermediate-value counterexample family.
//!
//! `f_n = base + alpha_n - beta_n` where `base` rises on `[0, 1/3]`, sits at
//! zero on `[1/3, 2/3]`, and rises again on `[2/3, 1]`; `alpha_n` and
//! `beta_n` are the stage-semantics tilt constants listening to the pair
//! `(A, B)`. While `n` stays unenumerated the zero set is the whole middle
//! plateau; as soon as `n` enters `A` at stage `s` the unique zero jumps to
//! `(1 - 2^-s)/3 < 1/3`, and entering `B` pushes it to `(2 + 2^-s)/3 > 2/3`.
//! Selecting zeros for the whole family therefore separates the pair.

use crate::exact::{CReal, Dyadic, Interval};
use crate::functions::CFunc;
use crate::machines::{StagePair, StageSet};

/// The base profile: `3x - 1`, then the zero plateau, then `3x - 2`.
/// Values at dyadic points are exact dyadics even though the plateau
/// breakpoints sit at non-dyadic thirds.
pub fn base_profile() -> CFunc {
    CFunc::new(
        |interval, _level| {
            // monotone nondecreasing, so the enclosure is exact
            Interval::new(base_value(interval.lo()), base_value(interval.hi()))
        },
        |level| level + 2, // slope <= 3 < 4
    )
}

fn base_value(x: &Dyadic) -> Dyadic {
    let t = x * &Dyadic::from_int(3);
    if t <= Dyadic::one() {
        &t - &Dyadic::one()
    } else if t >= Dyadic::from_int(2) {
        &t - &Dyadic::from_int(2)
    } else {
        Dyadic::zero()
    }
}

/// The tilt constant of one set: at query level `k` it reads the entry
/// stage `s` of `n` within the first `k` stages and answers `2^-s`, else 0.
/// A future entry at stage `s > k` moves the value by less than `2^-k`, so
/// this is a valid rapid Cauchy name. Entries at stage 0 are read as stage 1
/// to keep the tilt at most 1/2.
pub fn tilt(set: &StageSet, n: u64) -> CReal {
    let set = set.clone();
    CReal::from_fn_bounded(
        move |k| match set.entry_stage(n, k as u64) {
            Some(s) => Dyadic::two_pow(-(s.max(1) as i64)),
            None => Dyadic::zero(),
        },
        Dyadic::new(1, -1),
    )
}

/// Member `n` of the family over the given pair.
pub fn ivt_family(pair: &StagePair, n: u64) -> CFunc {
    let shift = tilt(&pair.a, n).sub(&tilt(&pair.b, n));
    base_profile().add_creal(&shift)
}

/// Closed-form zero of the `A`-side member tilted at stage `s`:
/// `(1 - 2^-s)/3`, as an exact ratio for test oracles.
pub fn a_zero_closed_form(s: u64) -> crate::exact::DyRatio {
    crate::exact::DyRatio::new(
        &Dyadic::one() - &Dyadic::two_pow(-(s as i64)),
        Dyadic::from_int(3),
    )
}

/// Closed-form zero of the `B`-side member tilted at stage `s`:
/// `(2 + 2^-s)/3`.
pub fn b_zero_closed_form(s: u64) -> crate::exact::DyRatio {
    crate::exact::DyRatio::new(
        &Dyadic::from_int(2) + &Dyadic::two_pow(-(s as i64)),
        Dyadic::from_int(3),
    )
}

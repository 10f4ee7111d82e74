//! Operator inversion on the diagonal instance class, driven by choice on
//! the naturals.
//!
//! A diagonal operator `T(x)_n = d_n x_n` with `inf d_n > 0` is bijective,
//! linear, and bounded, but the norm of the inverse is not visible in any
//! finite prefix of the diagonal. The inversion realizer therefore runs a
//! choice instance: every `k` refuted by an observed `d_n < 2^-k` is
//! excluded, the surviving least `k` certifies `inf d_n >= 2^-k` on the
//! scanned range, and the inverse coordinates `y_n / d_n` are emitted with
//! tail bounds scaled by `2^k`. Mind changes of the embedded choice run are
//! reported.

use crate::exact::{DyRatio, Dyadic};
use crate::functions::EllTwoVec;
use crate::weihrauch::{cn_solve, CnOutcome, Name};

/// Bounded bijective diagonal operator on `l2`: `d_n = prefix[n]`, falling
/// back to `tail` beyond the prefix; all entries positive.
#[derive(Clone, Debug)]
pub struct DiagonalOperator {
    prefix: Vec<Dyadic>,
    tail: Dyadic,
}

impl DiagonalOperator {
    /// Panics on non-positive diagonal entries (not a valid instance).
    pub fn new(prefix: Vec<Dyadic>, tail: Dyadic) -> DiagonalOperator {
        assert!(
            prefix.iter().all(|d| d.signum() > 0) && tail.signum() > 0,
            "diagonal entries must be positive"
        );
        DiagonalOperator { prefix, tail }
    }

    pub fn identity() -> DiagonalOperator {
        DiagonalOperator::new(vec![], Dyadic::one())
    }

    pub fn diag(&self, n: usize) -> Dyadic {
        self.prefix.get(n).cloned().unwrap_or_else(|| self.tail.clone())
    }

    /// Largest diagonal entry, a bound on the operator norm.
    pub fn norm_bound(&self) -> Dyadic {
        self.prefix
            .iter()
            .fold(self.tail.clone(), |acc, d| acc.max(d.clone()))
    }

    /// `T(x)`, exact on dyadic coordinates.
    pub fn apply(&self, x: &EllTwoVec) -> EllTwoVec {
        let t = self.clone();
        let x1 = x.clone();
        let x2 = x.clone();
        let bound_sq = {
            let b = self.norm_bound();
            &b * &b
        };
        EllTwoVec::new(
            move |n| &t.diag(n) * &x1.coeff(n),
            move |n| &x2.tail_sq(n) * &bound_sq,
        )
    }

    /// Exclusion stream feeding the choice instance: scanning the diagonal,
    /// report every `k` some observed entry refutes (`d_n < 2^-k`).
    pub fn exclusion_stream(&self, horizon: usize) -> Name {
        let mut reports: Vec<u64> = Vec::new();
        let mut reported = std::collections::HashSet::new();
        for n in 0..horizon {
            let d = self.diag(n);
            let mut k = 0u64;
            while Dyadic::two_pow(-(k as i64)) > d {
                if reported.insert(k) {
                    reports.push(k + 1);
                }
                k += 1;
            }
        }
        Name::from_values(reports, 0)
    }
}

#[derive(Clone)]
pub struct BimOutcome {
    pub inverse: EllTwoVec,
    /// Least `k` with every scanned `d_n >= 2^-k`.
    pub chosen_level: u64,
    pub mind_changes: u64,
}

/// How far past the explicit prefix the diagonal scan looks.
const BIM_SCAN_SLACK: usize = 32;

/// Inverts `T` at `y` within `2^-level` on supported coordinates, via an
/// embedded run of choice on the naturals.
pub fn bim_via_cn(t: &DiagonalOperator, y: &EllTwoVec, level: u32) -> BimOutcome {
    let horizon = t.prefix.len() + BIM_SCAN_SLACK;
    let stream = t.exclusion_stream(horizon);
    let CnOutcome {
        answer: chosen_level,
        mind_changes,
    } = cn_solve(&stream, 4 * horizon as u64 + 64);

    // |d_n x_n - y_n| = d_n |x_n - y_n/d_n| <= ||T|| 2^-grid <= 2^-level
    let grid = level as i64 + t.norm_bound().ceil_log2().expect("positive bound").max(0) + 1;
    let tc = t.clone();
    let y1 = y.clone();
    let y2 = y.clone();
    let scale_sq = Dyadic::two_pow(2 * chosen_level as i64);
    let inverse = EllTwoVec::new(
        move |n| DyRatio::new(y1.coeff(n), tc.diag(n)).floor_at(grid),
        move |n| &y2.tail_sq(n) * &scale_sq,
    );
    BimOutcome {
        inverse,
        chosen_level,
        mind_changes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    fn compose_error(t: &DiagonalOperator, x: &EllTwoVec, y: &EllTwoVec, coords: usize) -> Dyadic {
        let tx = t.apply(x);
        (0..coords).fold(Dyadic::zero(), |worst, n| {
            worst.max((&tx.coeff(n) - &y.coeff(n)).abs())
        })
    }

    #[test]
    fn identity_inverts_trivially() {
        let t = DiagonalOperator::identity();
        let y = EllTwoVec::finite(vec![d(1, -1), d(3, -2)]);
        let out = bim_via_cn(&t, &y, 20);
        assert_eq!(out.chosen_level, 0);
        assert_eq!(out.mind_changes, 0);
        assert!(compose_error(&t, &out.inverse, &y, 4) <= Dyadic::two_pow(-20));
    }

    #[test]
    fn constant_half_diagonal_doubles() {
        let t = DiagonalOperator::new(vec![], d(1, -1));
        let y = EllTwoVec::unit(0);
        let out = bim_via_cn(&t, &y, 20);
        assert_eq!(out.inverse.coeff(0), d(1, 1)); // exactly 2
        assert_eq!(out.chosen_level, 1);
        assert!(out.mind_changes <= 1);
    }

    #[test]
    fn mixed_diagonal_by_hand() {
        // d = (1, 1/2, 1/4, 1/4, ...), y = (1/2, 1/2, 1/4, 0, ...)
        let t = DiagonalOperator::new(vec![d(1, 0), d(1, -1)], d(1, -2));
        let y = EllTwoVec::finite(vec![d(1, -1), d(1, -1), d(1, -2)]);
        let out = bim_via_cn(&t, &y, 24);
        assert_eq!(out.inverse.coeff(0), d(1, -1));
        assert_eq!(out.inverse.coeff(1), d(1, 0));
        assert_eq!(out.inverse.coeff(2), d(1, 0));
        assert_eq!(out.inverse.coeff(3), Dyadic::zero());
        assert_eq!(out.chosen_level, 2);
        assert!(compose_error(&t, &out.inverse, &y, 6) <= Dyadic::two_pow(-24));
    }

    #[test]
    fn mind_changes_track_exclusions() {
        // diagonal descends to its minimum 2^-5 at index 4
        let prefix: Vec<Dyadic> = (0..5).map(|k| Dyadic::two_pow(-(k as i64 + 1))).collect();
        let t = DiagonalOperator::new(prefix, d(1, -3));
        let y = EllTwoVec::unit(4);
        let out = bim_via_cn(&t, &y, 20);
        assert_eq!(out.chosen_level, 5);
        assert!(out.mind_changes <= 5);
        assert_eq!(out.inverse.coeff(4), d(1, 5)); // 1 / 2^-5
    }

    #[test]
    fn non_dyadic_quotients_are_approximated() {
        let t = DiagonalOperator::new(vec![d(3, -2)], Dyadic::one()); // d_0 = 3/4
        let y = EllTwoVec::unit(0);
        let out = bim_via_cn(&t, &y, 30);
        // x_0 ~ 4/3, certified through composition
        assert!(compose_error(&t, &out.inverse, &y, 2) <= Dyadic::two_pow(-30));
    }
}

//! Specker sequences: monotone bounded sequences of exact dyadics whose
//! supremum encodes a stage-enumerated set.

use std::sync::Arc;

use crate::exact::{Dyadic, MonotoneSeq};
use crate::machines::StageSet;

/// `x_t = sum_{i in S_t} 2^-i`, exactly.
pub fn specker_term(source: &StageSet, stage: u64) -> Dyadic {
    source
        .at(stage)
        .iter()
        .fold(Dyadic::zero(), |acc, &i| &acc + &Dyadic::two_pow(-(i as i64)))
}

/// A Specker sequence over a stage-enumerated source set.
#[derive(Clone)]
pub struct SpeckerSeq {
    source: StageSet,
}

impl SpeckerSeq {
    pub fn new(source: StageSet) -> SpeckerSeq {
        SpeckerSeq { source }
    }

    pub fn term(&self, stage: u64) -> Dyadic {
        specker_term(&self.source, stage)
    }

    pub fn source(&self) -> &StageSet {
        &self.source
    }

    /// View as a monotone sequence bounded by 2 (the full geometric sum).
    pub fn monotone_seq(&self) -> MonotoneSeq {
        let s = self.clone();
        MonotoneSeq::from_dyadics(
            Arc::new(move |n| s.term(n as u64)),
            Dyadic::from_int(2),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_set_reaches_exact_sum() {
        let s = StageSet::injected(&[(5, vec![1, 3])]);
        let seq = SpeckerSeq::new(s);
        assert_eq!(seq.term(4), Dyadic::zero());
        for t in 5..20 {
            assert_eq!(seq.term(t), Dyadic::new(5, -3)); // 1/2 + 1/8
        }
    }

    #[test]
    fn empty_set_is_constant_zero() {
        let seq = SpeckerSeq::new(StageSet::empty());
        for t in 0..10 {
            assert_eq!(seq.term(t), Dyadic::zero());
        }
    }

    #[test]
    fn monotone_and_bounded() {
        let seq = SpeckerSeq::new(crate::machines::halting_set());
        let mut prev = Dyadic::zero();
        for t in 0..40 {
            let cur = seq.term(t);
            assert!(cur >= prev);
            assert!(cur <= Dyadic::from_int(2));
            prev = cur;
        }
    }
}

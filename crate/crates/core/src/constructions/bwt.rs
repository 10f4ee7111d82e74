//! Stage-semantics cluster-point oracle for sequences in `[0,1]`.

use crate::exact::{CRealSeq, Dyadic};

/// Center of a width-`2^-level` dyadic interval that holds as many of the
/// first `stage` terms as any competitor, found by repeated halving.
///
/// Each term is classified once by its level-`(level+4)` approximation,
/// clamped to `[0,1]`; halving descends into the half with the greater
/// count, ties going left, with the left half taken half-open. The output
/// stabilizes to a true cluster point for sequences whose counts stabilize,
/// in particular for convergent sequences.
pub fn bwt_cluster_stage(seq: &CRealSeq, stage: usize, level: u32) -> Dyadic {
    let points: Vec<Dyadic> = (0..stage)
        .map(|n| {
            seq(n)
                .approx(level + 4)
                .max(Dyadic::zero())
                .min(Dyadic::one())
        })
        .collect();

    let mut lo = Dyadic::zero();
    let mut hi = Dyadic::one();
    for _ in 0..level {
        let mid = (&lo + &hi).half();
        let left = points
            .iter()
            .filter(|q| **q >= lo && **q < mid)
            .count();
        let right = points
            .iter()
            .filter(|q| **q >= mid && **q <= hi)
            .count();
        if left >= right {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (&lo + &hi).half()
}

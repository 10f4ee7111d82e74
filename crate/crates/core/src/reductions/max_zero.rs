//! Witnesses for the equivalence of the maximum-point problem and the zero
//! problem on `[0,1]`.
//!
//! Direction one sends `f` to `-|f|`: its maxima are exactly the zeros of
//! `f`. Direction two sends `f` to `f - max f([0,1])`, computable because
//! the maximum value admits the branch-and-bound name: its zeros are exactly
//! the argmax points of `f`.

use crate::coding::encode_dyadic;
use crate::exact::Dyadic;
use crate::functions::sub_max;
use crate::weihrauch::{cfunc_to_name, name_to_cfunc, Name, ReductionWitness};

/// Precision floor for the embedded maximum name in the `max <= zero`
/// pre-processor.
const SUB_MAX_LEVEL: u32 = 24;

/// `(zero <= max, max <= zero)`.
pub fn max_equiv_zero_witnesses() -> (ReductionWitness, ReductionWitness) {
    let z_le_max = ReductionWitness::new(
        "zero<=max",
        |x| cfunc_to_name(&name_to_cfunc(x).neg_abs()),
        |_x, y| y.clone(),
    );
    let max_le_z = ReductionWitness::new(
        "max<=zero",
        |x| cfunc_to_name(&sub_max(&name_to_cfunc(x), SUB_MAX_LEVEL)),
        |_x, y| y.clone(),
    );
    (z_le_max, max_le_z)
}

/// Negative control: a witness whose post-processor ignores the oracle and
/// claims the constant point 0.
pub fn broken_witness() -> ReductionWitness {
    ReductionWitness::new(
        "broken",
        Name::clone,
        |_x, _y| Name::constant(encode_dyadic(&Dyadic::zero())),
    )
}

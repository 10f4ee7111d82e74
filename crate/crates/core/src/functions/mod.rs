//! Function spaces: piecewise-linear functions on `[0,1]` with certified
//! enclosures, the generic enclosure interface, and `l2` functionals.

mod cfunc;
mod hilbert;
mod plf;

pub use cfunc::CFunc;
pub use hilbert::{
    ball_index_of, dense_unit_ball, functional_from_vec, functional_norm_stage, inner_product,
    unit_vector_index, EllTwoVec, Functional, BALL_UNITS,
};
pub use plf::{plf_eval, plf_range, PLFunc};

use crate::exact::{CReal, Dyadic, Interval};

/// `f - max f([0,1])`, with the maximum supplied as a rapid Cauchy name by
/// the branch-and-bound maximizer. The zero set of the result is the argmax
/// set of `f`; `level` floors the precision of the embedded maximum queries
/// so zeros are certified at `2^-level`.
pub fn sub_max(f: &CFunc, level: u32) -> CFunc {
    let source = f.clone();
    let global = f.ext(&Interval::unit(), 2);
    let bound = &global.lo().abs().max(global.hi().abs()) + &Dyadic::one();
    let max_name = CReal::from_fn_bounded(
        move |n| crate::constructions::max_value(&source, n.max(level)),
        bound,
    );
    f.sub_creal(&max_name)
}

/// `-|f|`, at module level to mirror [`sub_max`].
pub fn neg_abs(f: &CFunc) -> CFunc {
    f.neg_abs()
}

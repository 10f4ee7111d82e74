//! Exact dyadic and interval arithmetic, plus computable reals presented as
//! rapid Cauchy names.

mod creal;
mod dyadic;
mod interval;

pub use creal::{cmp_partial, mct_stage, CReal, CRealSeq, MonotoneSeq, PartialOrder};
pub use dyadic::{DyRatio, Dyadic};
pub use interval::Interval;

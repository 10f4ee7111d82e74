//! The classical constructions: Specker sequences, trisection root finding,
//! branch-and-bound maxima, Kleene trees, the sequential intermediate-value
//! counterexample family, dimension-1 fixed points, and the stage-semantics
//! cluster-point oracle.

mod bwt;
mod family;
mod ivt;
mod kleene;
mod optimize;
mod specker;

pub use bwt::bwt_cluster_stage;
pub use family::{a_zero_closed_form, b_zero_closed_form, base_profile, ivt_family, tilt};
pub use ivt::{certify_sign, ivt_trisect, ivt_trisect_traced, TrisectOutcome};
pub use kleene::{forced_word, kleene_tree, reference_member, TreePredicate};
pub use optimize::{argmax_point, brouwer_dim1, max_value, zero_point};
pub use specker::{specker_term, SpeckerSeq};

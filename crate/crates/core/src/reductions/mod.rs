//! Executable reduction witnesses between the registered problems, plus the
//! operator-inversion realizer on the diagonal instance class.

mod bim;
mod ec_bridge;
mod frr_mct;
mod lim_choice;
mod max_zero;

pub use bim::{bim_via_cn, BimOutcome, DiagonalOperator};
pub use ec_bridge::{
    ec_problem, ec_via_frr_witness, enumeration_of_set, mct_ec_bridge, packed_norm_sq,
};
pub use frr_mct::{
    frr_instance, frr_le_mct_witness, frr_problem, frr_recover, solution_coords, FrrRecovery,
    FRR_COORDS,
};
pub use lim_choice::lim_cnpar_witnesses;
pub use max_zero::{broken_witness, max_equiv_zero_witnesses};

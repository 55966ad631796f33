//! Zero-surgery profiles, ±1-surgery correction terms, consistency checks, and
//! 2-knot invariants with their obstructions.

pub mod constants;
pub mod profile;
pub mod report;
pub mod two_knot;

pub use constants::{reference_constant, reference_constants, six_twist_spin_trefoil, ReferenceConstant, ReferenceValue};
pub use profile::{
    crosscheck_profile, crosscheck_with, is_d_symmetric_zero_surgery, pm_one_surgery_d, zero_surgery_profile, Check,
    CheckStatus, SurgerySign, ZeroSurgeryProfile,
};
pub use report::{profile_report, two_knot_report, Report};
pub use two_knot::{
    fibered_two_knot, obstruction_report, qhs_fiber_two_knot, Obstruction, ObstructionReport, TwoKnotInvariants,
};

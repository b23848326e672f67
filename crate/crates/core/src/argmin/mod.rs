//! Minimizer sets of one-coordinate restrictions, assignment functions and
//! the certified minimizers that realize the arg-min step.

mod assign;
mod convex;
mod gap;
mod global;
mod minset;

pub use assign::{g1_f1, g1_f1_on, g2_f1, g2_f1_on, m1_f1, m1_f1_on};
pub use convex::{convex_1d_min, g1_f2, g1_f2_default, g2_f2, m1_f2, DEFAULT_F2_PREC, DEFAULT_TOL_EXP};
pub use gap::{approx_gap, gap_lower_bound, lipschitz_family, Approximant};
pub use global::{global_min_enclosure, GlobalMin};
pub use minset::{AssignmentPolicy, LocalMinSet, SegmentCertification};

//! Scripted, seeded reproductions that each produce an [`ExperimentReport`].

mod adversary;
mod approx;
mod f1_convergence;
mod reachability;
mod report;

pub use adversary::{
    exp_adversarial_stopping, registered_rules, twin_sequences, AdversaryConfig, BudgetExceeded, CountingAccessor,
    StoppingRule,
};
pub use approx::{exp_approx_gap, step_level, ApproxGapConfig};
pub use f1_convergence::{exp_f1_convergence, F1ConvergenceConfig};
pub use reachability::{exp_f2_reachability, reachability_table, ReachRow, ReachabilityConfig};
pub use report::{ExperimentReport, Record, Verdict};

use rand::Rng;

use crate::realkit::Dyadic;

pub const NAMES: [&str; 4] = ["f1-convergence", "f2-reachability", "approx-gap", "stopping-adversary"];

/// Uniform dyadic in `[-2^mag, 2^mag]` with a 20-bit mantissa.
pub fn random_dyadic(rng: &mut impl Rng, mag: i64) -> Dyadic {
    Dyadic::new(rng.gen_range(-(1i64 << 20)..=(1i64 << 20)), mag - 20)
}

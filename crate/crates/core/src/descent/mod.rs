//! Block Gauss-Seidel runs, their traces and the checks applied to them.

mod critical;
mod effective;
mod engine;
mod schedule;
mod trace;

pub use critical::{critical_point_axes, critical_point_check, critical_point_check_exact, AxisCheck};
pub use effective::{verify_effective, EffectiveReport, DEFAULT_HORIZON};
pub use engine::{
    final_value, gauss_seidel, sup_distance, BlockProblem, F1Problem, F2Problem, StopKind, StoppingPolicy,
};
pub use schedule::Schedule;
pub use trace::{InnerStep, StopReason, Trace, TraceValue};

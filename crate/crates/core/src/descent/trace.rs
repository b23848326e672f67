use serde::{Deserialize, Serialize};

use crate::realkit::{Dyadic, Interval};

/// `f` at an iterate: exact when the arithmetic allows it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TraceValue<T = Dyadic> {
    Exact(T),
    Enclosure(Interval),
}

impl TraceValue<Dyadic> {
    /// Upper bound of the value.
    pub fn upper(&self) -> &Dyadic {
        match self {
            TraceValue::Exact(v) => v,
            TraceValue::Enclosure(e) => e.hi(),
        }
    }

    pub fn lower(&self) -> &Dyadic {
        match self {
            TraceValue::Exact(v) => v,
            TraceValue::Enclosure(e) => e.lo(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    FixedPoint,
    MaxIter,
    TargetMet,
    NoCertifiedSign,
}

/// The point after one block update.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerStep<T = Dyadic> {
    pub sweep: usize,
    pub block: Vec<usize>,
    pub point: Vec<T>,
}

/// History of a Gauss-Seidel run.
///
/// `iterates[0]` is the start and `iterates[k]` the point after sweep `k`.
/// The sweep that confirms a fixed point is counted in `sweeps` and logged
/// in `inner_steps` but does not add an iterate, so `converged_at` is the
/// index of the last entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace<T = Dyadic> {
    pub iterates: Vec<Vec<T>>,
    pub values: Vec<TraceValue<T>>,
    pub inner_steps: Vec<InnerStep<T>>,
    pub stop_reason: StopReason,
    pub sweeps: usize,
    pub converged_at: Option<usize>,
    /// Set when the stop was triggered by a criterion without a guarantee.
    #[serde(default)]
    pub heuristic: bool,
    /// Diagnostic for a `NoCertifiedSign` stop.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

impl<T> Trace<T> {
    pub fn last(&self) -> &[T] {
        self.iterates.last().expect("a trace holds at least its start point")
    }
}

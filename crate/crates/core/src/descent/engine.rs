//! Block Gauss-Seidel: sweep the blocks in order, replacing each block by
//! its assignment-function value with the others held fixed.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{InnerStep, Schedule, StopReason, Trace, TraceValue};
use crate::argmin::{g1_f1_on, g1_f2, g2_f1_on, g2_f2, m1_f2, AssignmentPolicy, LocalMinSet};
use crate::corpus::{f1_eval, f2_eval, F2Params, Rect};
use crate::error::{ArgminError, DescentError};
use crate::realkit::{Dyadic, Interval};
use crate::scalar::Scalar;

/// The per-problem pieces the engine needs.
pub trait BlockProblem<T: Scalar> {
    fn dim(&self) -> usize;

    fn contains(&self, x: &[T]) -> bool;

    fn start(&self) -> Vec<T>;

    fn value(&self, x: &[T]) -> TraceValue<T>;

    /// New values for the coordinates of `block`, the rest of `x` fixed.
    fn minimize_block(&self, x: &[T], block: &[usize]) -> Result<Vec<T>, DescentError>;

    /// Whether two consecutive iterates count as the same point.
    fn same_point(&self, a: &[T], b: &[T]) -> bool {
        a == b
    }

    /// `max_i |a_i − b_i| <= 2^-m`.
    fn within(&self, a: &[T], b: &[T], m: u32) -> bool {
        let bound = T::from_dyadic(&Dyadic::pow2(-(m as i64)));
        a.iter().zip(b).all(|(u, v)| (u.clone() - v.clone()).abs() <= bound)
    }
}

fn scalar_block(block: &[usize]) -> Result<usize, DescentError> {
    match block {
        [i] => Ok(*i),
        _ => Err(DescentError::UnsupportedBlock(block.to_vec())),
    }
}

/// `f1` on a rectangle with an explicit choice at the `x2 = 0` tie.
#[derive(Clone, Debug, PartialEq)]
pub struct F1Problem<T: Scalar = Dyadic> {
    pub rect: Rect<T>,
    pub policy: AssignmentPolicy<T>,
}

impl<T: Scalar> F1Problem<T> {
    pub fn new(rect: Rect<T>, policy: AssignmentPolicy<T>) -> Self {
        F1Problem { rect, policy }
    }
}

impl<T: Scalar> BlockProblem<T> for F1Problem<T> {
    fn dim(&self) -> usize {
        2
    }

    fn contains(&self, x: &[T]) -> bool {
        self.rect.contains(x)
    }

    fn start(&self) -> Vec<T> {
        self.rect.midpoint()
    }

    fn value(&self, x: &[T]) -> TraceValue<T> {
        TraceValue::Exact(f1_eval(&x[0], &x[1]))
    }

    fn minimize_block(&self, x: &[T], block: &[usize]) -> Result<Vec<T>, DescentError> {
        let v = match scalar_block(block)? {
            0 => g1_f1_on(&x[1], &self.rect, &self.policy)?,
            _ => g2_f1_on(&x[0], &self.rect),
        };
        Ok(vec![v])
    }
}

/// `f2` with certified inner minimization. Coordinates are moved to the
/// midpoint of the minimizer enclosure, and only when that does not raise
/// the certified upper bound of the value.
#[derive(Clone, Debug, PartialEq)]
pub struct F2Problem {
    pub params: F2Params,
    pub rect: Rect,
    pub tol: Dyadic,
    pub prec: u32,
    pub policy: AssignmentPolicy,
    /// Iterates closer than this in every coordinate count as a fixed point.
    pub fixed_point_tol: Dyadic,
}

impl F2Problem {
    pub fn new(params: F2Params, rect: Rect, prec: u32) -> Self {
        F2Problem {
            params,
            rect,
            tol: Dyadic::pow2(-32),
            prec,
            policy: AssignmentPolicy::Midpoint,
            fixed_point_tol: Dyadic::pow2(-30),
        }
    }

    fn choose(&self, set: &LocalMinSet) -> Result<Dyadic, ArgminError> {
        match set {
            LocalMinSet::Singleton { point } => Ok(point.mid()),
            // inner bounds of the endpoint enclosures are certified minimizers
            LocalMinSet::Segment { lo, hi, .. } => self.policy.resolve(lo.hi(), hi.lo()),
        }
    }
}

impl BlockProblem<Dyadic> for F2Problem {
    fn dim(&self) -> usize {
        2
    }

    fn contains(&self, x: &[Dyadic]) -> bool {
        self.rect.contains(x)
    }

    fn start(&self) -> Vec<Dyadic> {
        self.rect.midpoint()
    }

    fn value(&self, x: &[Dyadic]) -> TraceValue {
        TraceValue::Enclosure(f2_eval(&self.params, &x[0], &x[1], self.prec))
    }

    fn minimize_block(&self, x: &[Dyadic], block: &[usize]) -> Result<Vec<Dyadic>, DescentError> {
        let axis = scalar_block(block)?;
        let candidate = if axis == 0 {
            if x[1].is_zero() {
                self.choose(&m1_f2(&self.params, &x[1], &self.rect, &self.tol, self.prec)?)?
            } else {
                g1_f2(&self.params, &x[1], &self.rect, &self.tol, self.prec)?.mid()
            }
        } else {
            self.choose(&g2_f2(&self.params, &x[0], &self.rect, &self.tol, self.prec)?)?
        };
        let mut moved = x.to_vec();
        moved[axis] = candidate.clone();
        let before = f2_eval(&self.params, &x[0], &x[1], self.prec);
        let after = f2_eval(&self.params, &moved[0], &moved[1], self.prec);
        if after.hi() <= before.hi() {
            Ok(vec![candidate])
        } else {
            Ok(vec![x[axis].clone()])
        }
    }

    fn same_point(&self, a: &[Dyadic], b: &[Dyadic]) -> bool {
        a.iter().zip(b).all(|(u, v)| (u - v).abs() <= self.fixed_point_tol)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StopKind {
    /// Stop after this many sweeps, or earlier at a fixed point.
    MaxIter { sweeps: usize },
    /// Run until a sweep changes nothing.
    ExactFixedPoint,
    /// Stop once the iterate is within `2^-m` of the limit. With a known
    /// limit this is certified; without one, successive iterates are
    /// compared instead and the stop is marked heuristic.
    TargetError { m: u32, limit: Option<Vec<Dyadic>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StoppingPolicy {
    pub kind: StopKind,
    /// Hard cap for the non-`MaxIter` kinds.
    pub max_sweeps: usize,
}

impl StoppingPolicy {
    pub fn max_iter(sweeps: usize) -> Self {
        StoppingPolicy { kind: StopKind::MaxIter { sweeps }, max_sweeps: sweeps }
    }

    pub fn fixed_point(max_sweeps: usize) -> Self {
        StoppingPolicy { kind: StopKind::ExactFixedPoint, max_sweeps }
    }

    pub fn target(m: u32, limit: Option<Vec<Dyadic>>, max_sweeps: usize) -> Self {
        StoppingPolicy { kind: StopKind::TargetError { m, limit }, max_sweeps }
    }
}

impl Default for StoppingPolicy {
    fn default() -> Self {
        Self::fixed_point(100)
    }
}

/// Runs Gauss-Seidel from `x0` (the rectangle midpoint when `None`).
///
/// A `NoCertifiedSign` from an inner solver ends the run with that stop
/// reason and the trace so far. Exhausting `max_sweeps` under the
/// fixed-point or target criteria is an error.
pub fn gauss_seidel<T: Scalar, P: BlockProblem<T>>(
    problem: &P,
    schedule: &Schedule,
    x0: Option<Vec<T>>,
    stop: &StoppingPolicy,
) -> Result<Trace<T>, DescentError> {
    if schedule.dim() != problem.dim() {
        return Err(DescentError::BadSchedule(format!(
            "schedule covers {} coordinates, problem has {}",
            schedule.dim(),
            problem.dim()
        )));
    }
    let x0 = x0.unwrap_or_else(|| problem.start());
    if x0.len() != problem.dim() || !problem.contains(&x0) {
        return Err(DescentError::Infeasible);
    }
    let cap = match &stop.kind {
        StopKind::MaxIter { sweeps } => *sweeps,
        _ => stop.max_sweeps,
    };
    let target_limit: Option<Vec<T>> = match &stop.kind {
        StopKind::TargetError { limit: Some(l), .. } => Some(l.iter().map(T::from_dyadic).collect()),
        _ => None,
    };
    let mut trace = Trace {
        values: vec![problem.value(&x0)],
        iterates: vec![x0.clone()],
        inner_steps: vec![],
        stop_reason: StopReason::MaxIter,
        sweeps: 0,
        converged_at: None,
        heuristic: false,
        obstruction: None,
    };
    if let (StopKind::TargetError { m, .. }, Some(l)) = (&stop.kind, &target_limit) {
        if problem.within(&x0, l, *m) {
            trace.stop_reason = StopReason::TargetMet;
            return Ok(trace);
        }
    }
    let mut x = x0;
    for sweep in 1..=cap {
        let prev = x.clone();
        for block in schedule.blocks() {
            match problem.minimize_block(&x, block) {
                Ok(vals) => {
                    for (i, v) in block.iter().zip(vals) {
                        x[*i] = v;
                    }
                }
                Err(DescentError::Argmin(e @ ArgminError::NoCertifiedSign { .. })) => {
                    trace.sweeps = sweep;
                    trace.stop_reason = StopReason::NoCertifiedSign;
                    trace.obstruction = Some(e.to_string());
                    return Ok(trace);
                }
                Err(e) => return Err(e),
            }
            trace.inner_steps.push(InnerStep { sweep, block: block.clone(), point: x.clone() });
        }
        trace.sweeps = sweep;
        if problem.same_point(&prev, &x) {
            trace.stop_reason = StopReason::FixedPoint;
            trace.converged_at = Some(trace.iterates.len() - 1);
            return Ok(trace);
        }
        trace.values.push(problem.value(&x));
        trace.iterates.push(x.clone());
        if let StopKind::TargetError { m, .. } = &stop.kind {
            let met = match &target_limit {
                Some(l) => problem.within(&x, l, *m),
                None => problem.within(&x, &prev, *m),
            };
            if met {
                trace.stop_reason = StopReason::TargetMet;
                trace.heuristic = target_limit.is_none();
                return Ok(trace);
            }
        }
    }
    match stop.kind {
        StopKind::MaxIter { .. } => Ok(trace),
        _ => Err(DescentError::MaxIterExceeded(cap)),
    }
}

/// `max_i |x_i − y_i|`.
pub fn sup_distance(x: &[Dyadic], y: &[Dyadic]) -> Dyadic {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).max().unwrap_or_default()
}

/// Enclosure of the value at the last iterate.
pub fn final_value(trace: &Trace) -> Interval {
    match trace.values.last().expect("nonempty") {
        TraceValue::Exact(v) => Interval::point(v.clone()),
        TraceValue::Enclosure(e) => e.clone(),
    }
}

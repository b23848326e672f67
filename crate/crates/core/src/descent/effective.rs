use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{StopReason, Trace};
use crate::realkit::{Dyadic, Representation};

/// Default horizon a fixed point is extended to.
pub const DEFAULT_HORIZON: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveReport {
    /// `holds[n]` is `max_i |x_i^(n) − limit_i| <= 2^-n`.
    pub holds: Vec<bool>,
    pub first_failure: Option<usize>,
    /// Smallest index from which the contract holds to the horizon.
    pub effective_from: Option<usize>,
    pub pass: bool,
}

/// Checks the `2^-n` contract on the iterates against an exact limit.
///
/// A trace that stopped at a fixed point is continued with its last
/// iterate up to `horizon`; other traces are checked as recorded.
pub fn verify_effective(trace: &Trace, limit: &[BigRational], horizon: usize) -> EffectiveReport {
    let mut points: Vec<&[Dyadic]> = trace.iterates.iter().map(Vec::as_slice).collect();
    if trace.stop_reason == StopReason::FixedPoint {
        while points.len() <= horizon {
            points.push(trace.last());
        }
    }
    let holds: Vec<bool> = points
        .iter()
        .enumerate()
        .map(|(n, x)| {
            let bound = Representation::contract_bound(n as u32).to_rational();
            x.iter().zip(limit).all(|(xi, li)| (xi.to_rational() - li).abs() <= bound)
        })
        .collect();
    let first_failure = holds.iter().position(|h| !h);
    let effective_from = match holds.iter().rposition(|h| !h) {
        None => Some(0),
        Some(i) if i + 1 < holds.len() => Some(i + 1),
        Some(_) => None,
    };
    EffectiveReport { pass: first_failure.is_none(), holds, first_failure, effective_from }
}

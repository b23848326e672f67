use serde::{Deserialize, Serialize};

use crate::error::ArgminError;
use crate::realkit::{Dyadic, Interval};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentCertification {
    /// Both endpoint enclosures are tight around the true endpoints.
    TwoSided,
    /// The segment is only known to contain the minimizer set.
    OuterOnly,
}

/// The minimizers of a one-coordinate restriction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalMinSet {
    Singleton { point: Interval },
    Segment { lo: Interval, hi: Interval, certification: SegmentCertification },
}

impl LocalMinSet {
    pub fn singleton(x: Dyadic) -> Self {
        LocalMinSet::Singleton { point: Interval::point(x) }
    }

    pub fn exact_segment(lo: Dyadic, hi: Dyadic) -> Self {
        LocalMinSet::Segment {
            lo: Interval::point(lo),
            hi: Interval::point(hi),
            certification: SegmentCertification::TwoSided,
        }
    }

    /// Smallest interval known to contain every minimizer.
    pub fn hull(&self) -> Interval {
        match self {
            LocalMinSet::Singleton { point } => point.clone(),
            LocalMinSet::Segment { lo, hi, .. } => Interval::hull_of(lo.lo().clone(), hi.hi().clone()),
        }
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self, LocalMinSet::Singleton { .. })
    }

    /// The unique minimizer when it is known exactly.
    pub fn exact_point(&self) -> Option<&Dyadic> {
        match self {
            LocalMinSet::Singleton { point } if point.is_point() => Some(point.lo()),
            _ => None,
        }
    }
}

/// How an assignment function picks one point from a minimizer segment.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum AssignmentPolicy<T = Dyadic> {
    LeftEnd,
    RightEnd,
    #[default]
    Midpoint,
    Fixed(T),
}

impl<T: Scalar> AssignmentPolicy<T> {
    /// The chosen point of `[lo, hi]`.
    pub fn resolve(&self, lo: &T, hi: &T) -> Result<T, ArgminError> {
        match self {
            AssignmentPolicy::LeftEnd => Ok(lo.clone()),
            AssignmentPolicy::RightEnd => Ok(hi.clone()),
            AssignmentPolicy::Midpoint => Ok((lo.clone() + hi.clone()).half()),
            AssignmentPolicy::Fixed(a) => {
                if a < lo || a > hi {
                    Err(ArgminError::PolicyOutsideSegment {
                        value: a.to_string(),
                        lo: lo.to_string(),
                        hi: hi.to_string(),
                    })
                } else {
                    Ok(a.clone())
                }
            }
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> AssignmentPolicy<U> {
        match self {
            AssignmentPolicy::LeftEnd => AssignmentPolicy::LeftEnd,
            AssignmentPolicy::RightEnd => AssignmentPolicy::RightEnd,
            AssignmentPolicy::Midpoint => AssignmentPolicy::Midpoint,
            AssignmentPolicy::Fixed(a) => AssignmentPolicy::Fixed(f(a)),
        }
    }
}

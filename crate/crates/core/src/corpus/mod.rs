//! The counterexample function corpus and a uniform evaluation interface.

mod f1;
mod f2;
mod gstar;
mod rect;
pub(crate) mod sequence;

pub use f1::{f1_eval, f1_lipschitz, f1_partial, F1Branch, Partial};
pub use f2::{f2_eval, f2_lipschitz, f2_partial_x1, f2_partial_x2, u_eval, F2Params, PartialEnclosure};
pub use gstar::{
    c0, c1, g_term, gstar_deriv, gstar_eval, Certification, DerivEnclosure, DerivRegion, GStarParams,
    DEFAULT_PROBE_BUDGET, DEFAULT_TRUNCATION,
};
pub use rect::Rect;
pub use sequence::{rational_text, SequenceSpec};

use crate::error::CorpusError;
use crate::realkit::{Dyadic, Interval, DEFAULT_PRECISION};

/// One-sided slopes along an axis, `(from below, from above)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneSidedSlopes {
    pub left: Interval,
    pub right: Interval,
    pub certification: Certification,
}

/// A corpus function evaluated with certified enclosures.
pub trait Objective: Send + Sync {
    fn name(&self) -> &str;

    fn dim(&self) -> usize;

    fn eval(&self, x: &[Dyadic]) -> Interval;

    fn slopes(&self, x: &[Dyadic], axis: usize) -> OneSidedSlopes;

    /// Per-axis Lipschitz constants on `rect`.
    fn lipschitz(&self, rect: &Rect) -> Vec<Dyadic>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct F1;

impl Objective for F1 {
    fn name(&self) -> &str {
        "f1"
    }

    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, x: &[Dyadic]) -> Interval {
        Interval::point(f1_eval(&x[0], &x[1]))
    }

    fn slopes(&self, x: &[Dyadic], axis: usize) -> OneSidedSlopes {
        let p = f1_partial(&x[0], &x[1], axis);
        OneSidedSlopes {
            left: Interval::point(p.left().clone()),
            right: Interval::point(p.right().clone()),
            certification: Certification::TwoSided,
        }
    }

    fn lipschitz(&self, rect: &Rect) -> Vec<Dyadic> {
        f1_lipschitz(rect)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct F2 {
    pub params: F2Params,
    pub prec: u32,
}

impl F2 {
    pub fn new(params: F2Params, prec: u32) -> Self {
        F2 { params, prec }
    }
}

impl Objective for F2 {
    fn name(&self) -> &str {
        "f2"
    }

    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, x: &[Dyadic]) -> Interval {
        f2_eval(&self.params, &x[0], &x[1], self.prec)
    }

    fn slopes(&self, x: &[Dyadic], axis: usize) -> OneSidedSlopes {
        // f2 is C¹: both sides coincide
        let (value, certification) = if axis == 0 {
            let p = f2_partial_x1(&self.params, &x[0], &x[1], self.prec);
            (p.value, p.certification)
        } else {
            (f2_partial_x2(&self.params, &x[0], &x[1], self.prec), Certification::TwoSided)
        };
        OneSidedSlopes { left: value.clone(), right: value, certification }
    }

    fn lipschitz(&self, rect: &Rect) -> Vec<Dyadic> {
        f2_lipschitz(&self.params, rect, self.prec)
    }
}

/// `g*` as a one-dimensional objective.
#[derive(Clone, Debug, PartialEq)]
pub struct GStar {
    pub params: GStarParams,
}

impl Objective for GStar {
    fn name(&self) -> &str {
        "gstar"
    }

    fn dim(&self) -> usize {
        1
    }

    fn eval(&self, x: &[Dyadic]) -> Interval {
        gstar_eval(&self.params, &x[0], self.params.truncation)
    }

    fn slopes(&self, x: &[Dyadic], _axis: usize) -> OneSidedSlopes {
        let g = gstar_deriv(&self.params, &x[0], self.params.truncation);
        OneSidedSlopes { left: g.value.clone(), right: g.value, certification: g.certification }
    }

    fn lipschitz(&self, rect: &Rect) -> Vec<Dyadic> {
        let a = rect.max_abs(0);
        vec![gstar_deriv(&self.params, &a, self.params.truncation).value.mag()]
    }
}

/// Restriction of an objective to one free axis, the others held fixed.
pub struct Section<'a> {
    pub inner: &'a dyn Objective,
    pub free_axis: usize,
    pub fixed: Vec<Dyadic>,
}

impl<'a> Section<'a> {
    fn embed(&self, t: &Dyadic) -> Vec<Dyadic> {
        let mut x = self.fixed.clone();
        x[self.free_axis] = t.clone();
        x
    }

    /// A thin box around the section line, for bounding its Lipschitz constant.
    fn rect_for(&self, rect: &Rect) -> Rect {
        let mut axes: Vec<(Dyadic, Dyadic)> = self.fixed.iter().map(|v| (v.clone(), v + &Dyadic::pow2(-60))).collect();
        axes[self.free_axis] = rect.axes()[0].clone();
        Rect::new(axes).expect("section rectangle is nondegenerate")
    }
}

impl Objective for Section<'_> {
    fn name(&self) -> &str {
        "section"
    }

    fn dim(&self) -> usize {
        1
    }

    fn eval(&self, x: &[Dyadic]) -> Interval {
        self.inner.eval(&self.embed(&x[0]))
    }

    fn slopes(&self, x: &[Dyadic], _axis: usize) -> OneSidedSlopes {
        self.inner.slopes(&self.embed(&x[0]), self.free_axis)
    }

    fn lipschitz(&self, rect: &Rect) -> Vec<Dyadic> {
        let full = self.inner.lipschitz(&self.rect_for(rect));
        vec![full[self.free_axis].clone()]
    }
}

/// Looks up a corpus function by name. `gstar` uses the `g*` part of the
/// `f2` parameters.
pub fn by_name(name: &str, params: &F2Params, prec: Option<u32>) -> Result<Box<dyn Objective>, CorpusError> {
    let prec = prec.unwrap_or(DEFAULT_PRECISION);
    match name {
        "f1" => Ok(Box::new(F1)),
        "f2" => {
            params.validate()?;
            Ok(Box::new(F2::new(params.clone(), prec)))
        }
        "gstar" => {
            params.gstar.validate()?;
            Ok(Box::new(GStar { params: params.gstar.clone() }))
        }
        other => Err(CorpusError::UnknownFunction(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn registry() {
        let p = F2Params::default();
        assert_eq!(by_name("f1", &p, None).unwrap().name(), "f1");
        assert_eq!(by_name("f2", &p, Some(40)).unwrap().dim(), 2);
        assert!(matches!(by_name("f3", &p, None), Err(CorpusError::UnknownFunction(_))));
    }

    #[test]
    fn section_of_f1() {
        let s = Section { inner: &F1, free_axis: 0, fixed: vec![Dyadic::zero(), Dyadic::one()] };
        assert_eq!(s.eval(&[Dyadic::from(-1)]), Interval::point(Dyadic::one()));
        let r = Rect::new(vec![(Dyadic::from(-2), Dyadic::from(2))]).unwrap();
        // x2 fixed at 1 (plus a hair): |∂1| <= 1 + 1/2
        let l = s.lipschitz(&r);
        assert!(l[0] >= "3/2".parse().unwrap() && l[0] < Dyadic::from(2));
    }
}

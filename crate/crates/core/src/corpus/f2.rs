//! `f2(x1, x2) = g*(x1) + u(x1, x2)` with `u = x2² e^{α x1}` for `x2 >= 0`
//! and `u = x2² e^{−α x1}` for `x2 < 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gstar::{gstar_deriv, gstar_eval, Certification, GStarParams};
use super::Rect;
use crate::corpus::sequence::rational_text;
use crate::error::CorpusError;
use crate::realkit::{Dyadic, Interval};

/// Extra bits used when enclosing a non-dyadic `α`.
const ALPHA_GUARD_BITS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct F2Params {
    pub gstar: GStarParams,
    /// `α > 0`, kept as an exact rational so `1/10` stays `1/10`.
    #[serde(with = "rational_text")]
    pub alpha: BigRational,
}

impl F2Params {
    pub fn new(gstar: GStarParams, alpha: BigRational) -> Self {
        F2Params { gstar, alpha }
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        self.gstar.validate()?;
        if !self.alpha.is_positive() {
            return Err(CorpusError::BadParameter { name: "alpha", reason: format!("{} is not > 0", self.alpha) });
        }
        Ok(())
    }

    pub fn alpha_enclosure(&self, prec: u32) -> Interval {
        Interval::from_rational(&self.alpha, prec + ALPHA_GUARD_BITS)
    }
}

impl Default for F2Params {
    fn default() -> Self {
        F2Params { gstar: GStarParams::default(), alpha: BigRational::new(1.into(), 10.into()) }
    }
}

/// `e^{±α x1}`, sign taken from the half plane of `x2`.
pub fn u_exponential(p: &F2Params, x1: &Dyadic, x2: &Dyadic, prec: u32) -> Interval {
    let arg = p.alpha_enclosure(prec).scale(x1);
    let arg = if x2.is_negative() { -arg } else { arg };
    arg.exp(prec)
}

pub fn u_eval(p: &F2Params, x1: &Dyadic, x2: &Dyadic, prec: u32) -> Interval {
    if x2.is_zero() {
        return Interval::zero();
    }
    u_exponential(p, x1, x2, prec).scale(&x2.square())
}

pub fn f2_eval(p: &F2Params, x1: &Dyadic, x2: &Dyadic, prec: u32) -> Interval {
    &gstar_eval(&p.gstar, x1, p.gstar.truncation) + &u_eval(p, x1, x2, prec)
}

/// A certified partial-derivative enclosure; the certification is
/// inherited from the `g*'` part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialEnclosure {
    pub value: Interval,
    pub certification: Certification,
}

/// `∂f2/∂x1 = g*'(x1) ± α x2² e^{±α x1}`.
pub fn f2_partial_x1(p: &F2Params, x1: &Dyadic, x2: &Dyadic, prec: u32) -> PartialEnclosure {
    let g = gstar_deriv(&p.gstar, x1, p.gstar.truncation);
    if x2.is_zero() {
        return PartialEnclosure { value: g.value, certification: g.certification };
    }
    let alpha = p.alpha_enclosure(prec);
    let alpha = if x2.is_negative() { -alpha } else { alpha };
    let coupling = (&alpha * &u_exponential(p, x1, x2, prec)).scale(&x2.square());
    PartialEnclosure { value: &g.value + &coupling, certification: g.certification }
}

/// `∂f2/∂x2 = 2 x2 e^{±α x1}`; continuous across `x2 = 0` where it is 0.
pub fn f2_partial_x2(p: &F2Params, x1: &Dyadic, x2: &Dyadic, prec: u32) -> Interval {
    if x2.is_zero() {
        return Interval::zero();
    }
    u_exponential(p, x1, x2, prec).scale(&x2.mul_pow2(1))
}

/// Per-axis Lipschitz bounds of `f2` on a rectangle, from interval bounds
/// of the gradient: `|∂1| ≤ g*'(A) + α B² e^{αA}`, `|∂2| ≤ 2 B e^{αA}`.
pub fn f2_lipschitz(p: &F2Params, rect: &Rect, prec: u32) -> Vec<Dyadic> {
    let a = rect.max_abs(0);
    let b = rect.max_abs(1);
    let slope = gstar_deriv(&p.gstar, &a, p.gstar.truncation).value.mag();
    let growth = p.alpha_enclosure(prec).scale(&a).exp(prec).hi().clone();
    let alpha_hi = p.alpha_enclosure(prec).hi().clone();
    let l1 = slope + alpha_hi * b.square() * &growth;
    let l2 = b.mul_pow2(1) * growth;
    vec![l1, l2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SequenceSpec;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn params() -> F2Params {
        F2Params::new(GStarParams::new(SequenceSpec::standard(d("1/2"))), rat(1, 10))
    }

    /// Rational Taylor sum for `e^y`, 80 terms.
    fn exp_oracle(y: &BigRational) -> BigRational {
        let mut sum = rat(0, 1);
        let mut term = rat(1, 1);
        for k in 1..=80i64 {
            sum += &term;
            term = term * y / rat(k, 1);
        }
        sum
    }

    #[test]
    fn x2_zero_reduces_to_gstar() {
        let p = params();
        for x1 in ["-2", "1/4", "3/4", "2"] {
            let x1 = d(x1);
            assert_eq!(f2_eval(&p, &x1, &Dyadic::zero(), 53), gstar_eval(&p.gstar, &x1, 53));
        }
    }

    #[test]
    fn worked_values() {
        let p = params();
        let e = f2_eval(&p, &d("0"), &d("1"), 40);
        assert!(e.contains(&Dyadic::from(1)));
        let e = f2_eval(&p, &d("2"), &d("1"), 40);
        let target = rat(39, 28) + exp_oracle(&rat(1, 5));
        assert!(e.contains_rational(&target));
        assert!(e.width() < Dyadic::pow2(-30));
    }

    #[test]
    fn partial_x1_values() {
        let p = params();
        let g = f2_partial_x1(&p, &d("1/4"), &d("0"), 53);
        assert_eq!(g.value, Interval::zero());
        let g = f2_partial_x1(&p, &d("-2"), &d("1"), 53);
        let target = rat(-7, 3) + rat(1, 10) * exp_oracle(&rat(-1, 5));
        assert!(g.value.contains_rational(&target));
    }

    #[test]
    fn partial_x1_brackets_a_root_for_x2_one() {
        let p = params();
        assert!(f2_partial_x1(&p, &d("-2"), &d("1"), 53).value.certainly_negative());
        assert!(f2_partial_x1(&p, &d("-1/2"), &d("1"), 53).value.certainly_positive());
    }

    #[test]
    fn mirrored_half_plane() {
        let p = params();
        let a = f2_eval(&p, &d("3/4"), &d("1/2"), 50);
        let b = f2_eval(&p, &d("-3/4"), &d("-1/2"), 50);
        assert_eq!(a, b);
    }

    #[test]
    fn partial_x2_vanishes_at_seam() {
        let p = params();
        for k in [4i64, 8, 16, 24] {
            let up = f2_partial_x2(&p, &d("1"), &Dyadic::pow2(-k), 53);
            let down = f2_partial_x2(&p, &d("1"), &-Dyadic::pow2(-k), 53);
            assert!(up.mag() <= Dyadic::pow2(2 - k));
            assert!(down.mag() <= Dyadic::pow2(2 - k));
        }
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        let mut p = params();
        p.alpha = rat(0, 1);
        assert!(p.validate().is_err());
    }
}

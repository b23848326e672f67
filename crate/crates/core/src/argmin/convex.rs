//! Certified minimization of convex functions of one variable by bisection
//! on the sign of the derivative enclosure.

use num_traits::Zero;

use super::{LocalMinSet, SegmentCertification};
use crate::corpus::{f2_partial_x1, f2_partial_x2, F2Params, Rect, SequenceSpec};
use crate::error::ArgminError;
use crate::realkit::{Dyadic, Interval};

/// Default bisection tolerance for the `f2` assignment functions.
pub const DEFAULT_TOL_EXP: i64 = -32;
/// Default working precision for the `f2` assignment functions.
pub const DEFAULT_F2_PREC: u32 = 64;

enum Sign {
    Negative,
    Positive,
    Zero,
    Unknown,
}

fn sign_of(e: &Interval) -> Sign {
    if e.is_point() && e.lo().is_zero() {
        Sign::Zero
    } else if e.certainly_negative() {
        Sign::Negative
    } else if e.certainly_positive() {
        Sign::Positive
    } else {
        Sign::Unknown
    }
}

/// Minimizer of a convex function on `[lo, hi]` given a certified
/// enclosure of its derivative.
///
/// Returns a singleton enclosure of width at most `tol`, or the exact point
/// when the derivative is certified zero somewhere. When the midpoint and
/// both quarter points all give undecided signs and the bracket is still
/// wider than `tol`, the search stops with `NoCertifiedSign`.
pub fn convex_1d_min(
    deriv: impl Fn(&Dyadic) -> Interval,
    lo: &Dyadic,
    hi: &Dyadic,
    tol: &Dyadic,
) -> Result<LocalMinSet, ArgminError> {
    if lo > hi {
        return Err(ArgminError::Invalid(format!("empty domain [{lo}, {hi}]")));
    }
    if !tol.is_positive() {
        return Err(ArgminError::Invalid("tolerance must be positive".into()));
    }
    let d_lo = deriv(lo);
    if !d_lo.lo().is_negative() {
        return Ok(LocalMinSet::singleton(lo.clone()));
    }
    let d_hi = deriv(hi);
    if !d_hi.hi().is_positive() {
        return Ok(LocalMinSet::singleton(hi.clone()));
    }
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while &b - &a > *tol {
        let m = a.midpoint(&b);
        match sign_of(&deriv(&m)) {
            Sign::Zero => return Ok(LocalMinSet::singleton(m)),
            Sign::Negative => a = m,
            Sign::Positive => b = m,
            Sign::Unknown => {
                let q1 = a.midpoint(&m);
                let q3 = m.midpoint(&b);
                let (s1, s3) = (sign_of(&deriv(&q1)), sign_of(&deriv(&q3)));
                match (s1, s3) {
                    (Sign::Zero, _) => return Ok(LocalMinSet::singleton(q1)),
                    (_, Sign::Zero) => return Ok(LocalMinSet::singleton(q3)),
                    (Sign::Positive, _) => b = q1,
                    (Sign::Negative, Sign::Positive) => (a, b) = (q1, q3),
                    (_, Sign::Negative) => a = q3,
                    (Sign::Negative, Sign::Unknown) => a = q1,
                    (Sign::Unknown, Sign::Positive) => b = q3,
                    (Sign::Unknown, Sign::Unknown) => return Err(ArgminError::NoCertifiedSign { lo: a, hi: b }),
                }
            }
        }
    }
    Ok(LocalMinSet::Singleton { point: Interval::hull_of(a, b) })
}

/// `G_1(x2)` for `f2`: the unique minimizer of `f2(·, x2)` over the
/// `x1`-range of `rect`, for `x2 ≠ 0`.
pub fn g1_f2(p: &F2Params, x2: &Dyadic, rect: &Rect, tol: &Dyadic, prec: u32) -> Result<Interval, ArgminError> {
    if x2.is_zero() {
        return Err(ArgminError::Invalid("the x1-minimizer of f2 is unique only for x2 != 0".into()));
    }
    let set = convex_1d_min(|t| f2_partial_x1(p, t, x2, prec).value, rect.lower(0), rect.upper(0), tol)?;
    Ok(set.hull())
}

/// `g1_f2` with the default tolerance and precision on `[-2, 2]²`.
pub fn g1_f2_default(p: &F2Params, x2: &Dyadic) -> Result<Interval, ArgminError> {
    g1_f2(p, x2, &Rect::default_square(), &Dyadic::pow2(DEFAULT_TOL_EXP), DEFAULT_F2_PREC)
}

/// `𝔐_1(x2)` for `f2`. At `x2 = 0` this is `[-ξ*, ξ*]`; when the limit is
/// hidden only the probed term `ξ_N` bounds it from outside.
pub fn m1_f2(p: &F2Params, x2: &Dyadic, rect: &Rect, tol: &Dyadic, prec: u32) -> Result<LocalMinSet, ArgminError> {
    if !x2.is_zero() {
        return Ok(LocalMinSet::Singleton { point: g1_f2(p, x2, rect, tol, prec)? });
    }
    let seq = &p.gstar.seq;
    let clip = |e: Interval| {
        let lo = e.lo().clone().max(rect.lower(0).clone()).min(rect.upper(0).clone());
        let hi = e.hi().clone().max(rect.lower(0).clone()).min(rect.upper(0).clone());
        Interval::hull_of(lo, hi)
    };
    let (right, certification) = match seq {
        SequenceSpec::Standard { xi_star } => (Interval::from_rational(xi_star, prec), SegmentCertification::TwoSided),
        SequenceSpec::Plateau { .. } => {
            (Interval::hull_of(seq.lower_bound(), seq.term(p.gstar.probe_budget)), SegmentCertification::OuterOnly)
        }
    };
    let left = -right.clone();
    Ok(LocalMinSet::Segment { lo: clip(left), hi: clip(right), certification })
}

/// `G_2(x1)` for `f2`: the minimizer of `f2(x1, ·)` over the `x2`-range.
pub fn g2_f2(p: &F2Params, x1: &Dyadic, rect: &Rect, tol: &Dyadic, prec: u32) -> Result<LocalMinSet, ArgminError> {
    convex_1d_min(|t| f2_partial_x2(p, x1, t, prec), rect.lower(1), rect.upper(1), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{f2_eval, GStarParams};
    use num_rational::BigRational;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn params() -> F2Params {
        F2Params::default()
    }

    #[test]
    fn quadratic_vertex() {
        let c = d("1/4");
        let tol = Dyadic::pow2(-20);
        let set = convex_1d_min(|y| Interval::point((y - &c).mul_pow2(1)), &d("-1"), &d("1"), &tol).unwrap();
        assert!(set.hull().contains(&c));
        assert!(set.hull().width() <= tol);
    }

    #[test]
    fn endpoint_when_sign_is_constant() {
        let tol = Dyadic::pow2(-10);
        let set = convex_1d_min(|_| Interval::point(d("1")), &d("-1"), &d("1"), &tol).unwrap();
        assert_eq!(set, LocalMinSet::singleton(d("-1")));
        let set = convex_1d_min(|_| Interval::point(d("-1")), &d("-1"), &d("1"), &tol).unwrap();
        assert_eq!(set, LocalMinSet::singleton(d("1")));
    }

    #[test]
    fn undecidable_sign_is_reported() {
        let wide = |_: &Dyadic| Interval::hull_of(d("-1"), d("1"));
        let e = convex_1d_min(wide, &d("-1"), &d("1"), &Dyadic::pow2(-10)).unwrap_err();
        assert!(matches!(e, ArgminError::NoCertifiedSign { .. }));
    }

    #[test]
    fn f2_x1_minimizer_for_positive_x2() {
        let p = params();
        let g = g1_f2(&p, &d("1"), &Rect::default_square(), &Dyadic::pow2(-20), 53).unwrap();
        assert!(g.hi() < &d("-1/2"));
        assert!(g.lo() > &d("-2"));
        // brute force: the grid point with the smallest upper bound
        let step = Dyadic::pow2(-10);
        let mut best: Option<(Dyadic, Interval)> = None;
        let mut x = d("-2");
        while x <= d("2") {
            let v = f2_eval(&p, &x, &d("1"), 53);
            if best.as_ref().is_none_or(|(_, b)| v.hi() < b.hi()) {
                best = Some((x.clone(), v));
            }
            x = &x + &step;
        }
        let (grid_x, _) = best.unwrap();
        assert!((&grid_x - g.lo()).abs() <= Dyadic::pow2(-9));
    }

    #[test]
    fn f2_x2_minimizer_is_zero() {
        let p = params();
        let set = g2_f2(&p, &d("1"), &Rect::default_square(), &Dyadic::pow2(-20), 53).unwrap();
        assert!(set.hull().contains(&Dyadic::zero()));
    }

    #[test]
    fn mirror_symmetry() {
        let p = params();
        let up = g1_f2_default(&p, &d("1")).unwrap();
        let down = g1_f2_default(&p, &d("-1")).unwrap();
        assert_eq!(up, -down);
    }

    #[test]
    fn flat_segment_for_standard_and_plateau() {
        let p = params();
        let r = Rect::default_square();
        let tol = Dyadic::pow2(-20);
        let m = m1_f2(&p, &d("0"), &r, &tol, 53).unwrap();
        assert_eq!(m, LocalMinSet::exact_segment(d("-1/2"), d("1/2")));

        let mut q = p.clone();
        q.gstar = GStarParams::new(SequenceSpec::plateau(d("1/2"), 20));
        match m1_f2(&q, &d("0"), &r, &tol, 53).unwrap() {
            LocalMinSet::Segment { lo, hi, certification } => {
                assert_eq!(certification, SegmentCertification::OuterOnly);
                let limit = q.gstar.seq.limit();
                assert!(hi.contains_rational(&limit));
                assert!(lo.contains_rational(&-limit));
            }
            other => panic!("expected a segment, got {other:?}"),
        }

        let mut s = p.clone();
        s.gstar = GStarParams::new(SequenceSpec::standard_rational(BigRational::new(1.into(), 20.into())));
        let m = m1_f2(&s, &d("0"), &r, &tol, 53).unwrap();
        assert!(m.hull().contains_rational(&BigRational::new(1.into(), 20.into())));
    }
}

use effopt::argmin::AssignmentPolicy;
use effopt::corpus::{f1_eval, gstar_eval, GStarParams, Rect, SequenceSpec};
use effopt::descent::{gauss_seidel, F1Problem, Schedule, StoppingPolicy};
use effopt::{Dyadic, ExactTrace, Interval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn dy(range: i64, bits: i64) -> impl Strategy<Value = Dyadic> {
    (-(range << bits)..=(range << bits)).prop_map(move |m| Dyadic::new(m, -bits))
}

fn any_dy() -> impl Strategy<Value = Dyadic> {
    (any::<i64>(), -80i64..80).prop_map(|(m, e)| Dyadic::new(m, e))
}

fn q(v: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(v), BigInt::from(den))
}

proptest! {
    #[test]
    fn addition_is_associative(a in any_dy(), b in any_dy(), c in any_dy()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in any_dy(), b in any_dy(), c in any_dy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn arithmetic_matches_rationals(a in any_dy(), b in any_dy()) {
        prop_assert_eq!((&a * &b).to_rational(), a.to_rational() * b.to_rational());
        prop_assert_eq!((&a - &b).to_rational(), a.to_rational() - b.to_rational());
    }

    #[test]
    fn exp_encloses_the_float_value(x in dy(8, 16), prec in 20u32..120) {
        let e = Interval::point(x.clone()).exp(prec);
        let v = x.to_f64().exp();
        prop_assert!(e.lo().to_f64() <= v * (1.0 + 1e-14));
        prop_assert!(e.hi().to_f64() >= v * (1.0 - 1e-14));
        prop_assert!(e.width() <= Dyadic::pow2(-(prec as i64)));
    }

    #[test]
    fn exp_refines_with_precision(x in dy(4, 12), p in 20u32..60) {
        let coarse = Interval::point(x.clone()).exp(p);
        let fine = Interval::point(x).exp(p + 40);
        prop_assert!(coarse.overlaps(&fine));
        prop_assert!(fine.width() <= coarse.width());
    }

    #[test]
    fn exp_is_monotone(x in dy(4, 12), y in dy(4, 12)) {
        prop_assume!(x < y);
        let (a, b) = (Interval::point(x).exp(64), Interval::point(y).exp(64));
        prop_assert!(a.lo() <= b.hi());
    }

    #[test]
    fn f1_is_convex_along_axes(x in dy(3, 10), y0 in dy(3, 10), y1 in dy(3, 10), axis in 0usize..2) {
        let at = |t: &Dyadic| if axis == 0 { f1_eval(t, &x) } else { f1_eval(&x, t) };
        let mid = y0.midpoint(&y1);
        prop_assert!(at(&mid) <= (at(&y0) + at(&y1)).half());
    }

    #[test]
    fn f1_vanishes_only_on_the_segment(x1 in dy(2, 12), x2 in dy(2, 12)) {
        let v = f1_eval(&x1, &x2);
        prop_assert!(v >= Dyadic::zero());
        prop_assert_eq!(v.is_zero(), x2.is_zero() && x1.abs() <= Dyadic::from(1));
    }

    #[test]
    fn f1_seams_are_continuous(t in dy(2, 12)) {
        // across x1 = ±1 and x2 = 0 the neighbouring formulas agree
        let eps = Dyadic::pow2(-40);
        for s in [Dyadic::from(1), Dyadic::from(-1)] {
            let a = f1_eval(&(&s - &eps), &t);
            let b = f1_eval(&(&s + &eps), &t);
            prop_assert!((a - b).abs() <= Dyadic::pow2(-36));
        }
        let a = f1_eval(&t, &eps);
        let b = f1_eval(&t, &-eps.clone());
        prop_assert!((a - b).abs() <= Dyadic::pow2(-36));
    }

    #[test]
    fn gstar_even_nonnegative_and_flat(x in dy(2, 10), k in 2i64..8) {
        let xi = Dyadic::frac(1, 1) + Dyadic::pow2(-k);
        let p = GStarParams::new(SequenceSpec::standard(xi.clone()));
        let g = gstar_eval(&p, &x, p.truncation);
        prop_assert_eq!(&g, &gstar_eval(&p, &-x.clone(), p.truncation));
        prop_assert!(*g.hi() >= Dyadic::zero());
        if x.abs() <= xi {
            prop_assert!(g.is_point() && g.lo().is_zero());
        } else {
            prop_assert!(g.hi().is_positive());
        }
    }

    #[test]
    fn gstar_nondyadic_limit_flat_part(x in dy(1, 12)) {
        let p = GStarParams::new(SequenceSpec::standard_rational(q(1, 20)));
        let g = gstar_eval(&p, &x, p.truncation);
        if x.abs().to_rational() <= q(1, 20) {
            prop_assert!(g.is_point() && g.lo().is_zero());
        }
    }

    #[test]
    fn traces_round_trip(x1 in dy(2, 8), x2 in dy(2, 8), a in dy(1, 4)) {
        let p = F1Problem::new(Rect::default_square(), AssignmentPolicy::Fixed(a));
        let t = gauss_seidel(&p, &Schedule::coordinatewise(2), Some(vec![x1, x2]), &StoppingPolicy::fixed_point(8)).unwrap();
        let back: ExactTrace = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }
}

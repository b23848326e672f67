//! Assignment functions of `f1`.
//!
//! For fixed `x2` the map `x1 ↦ f1(x1, x2)` is piecewise linear with slopes
//! of fixed sign on each side of `1` (when `x2 < 0`) or `-1` (when `x2 > 0`),
//! and flat on `[-1, 1]` when `x2 = 0`. Clamping to the rectangle gives the
//! minimizers, so on `[-a, a]` with `a < 1` the step values become `±a`.

use super::{AssignmentPolicy, LocalMinSet};
use crate::corpus::Rect;
use crate::error::ArgminError;
use crate::realkit::Dyadic;
use crate::scalar::Scalar;

/// Endpoints of the `x1`-minimizer set of `f1(·, x2)` over `[lo, hi]`.
fn x1_minimizers<T: Scalar>(x2: &T, lo: &T, hi: &T) -> (T, T) {
    let one = T::one();
    if *x2 < T::zero() {
        let c = one.clamp_to(lo, hi);
        (c.clone(), c)
    } else if *x2 > T::zero() {
        let c = (-one).clamp_to(lo, hi);
        (c.clone(), c)
    } else {
        let l = T::max_of(-one.clone(), lo.clone());
        let u = T::min_of(one, hi.clone());
        if l <= u {
            (l, u)
        } else if *hi < l {
            (hi.clone(), hi.clone())
        } else {
            (lo.clone(), lo.clone())
        }
    }
}

/// `𝔐_1(x2)` for `f1` on the `x1`-range of `rect`.
pub fn m1_f1_on(x2: &Dyadic, rect: &Rect) -> LocalMinSet {
    let (l, u) = x1_minimizers(x2, rect.lower(0), rect.upper(0));
    if l == u {
        LocalMinSet::singleton(l)
    } else {
        LocalMinSet::exact_segment(l, u)
    }
}

/// `𝔐_1(x2)` on the default rectangle `[-2, 2]²`.
pub fn m1_f1(x2: &Dyadic) -> LocalMinSet {
    m1_f1_on(x2, &Rect::default_square())
}

/// `G_1(x2)` on `rect`, with the policy deciding the value at `x2 = 0`.
pub fn g1_f1_on<T: Scalar>(x2: &T, rect: &Rect<T>, policy: &AssignmentPolicy<T>) -> Result<T, ArgminError> {
    let (l, u) = x1_minimizers(x2, rect.lower(0), rect.upper(0));
    if l == u {
        Ok(l)
    } else {
        policy.resolve(&l, &u)
    }
}

pub fn g1_f1<T: Scalar>(x2: &T, policy: &AssignmentPolicy<T>) -> Result<T, ArgminError> {
    let two = T::from_i32(2);
    let rect = Rect::symmetric(two.clone(), two).expect("default square is valid");
    g1_f1_on(x2, &rect, policy)
}

/// `G_2(x1) = 0`: for every `x1`, `f1(x1, ·)` is a V with its tip at 0.
pub fn g2_f1<T: Scalar>(_x1: &T) -> T {
    T::zero()
}

/// `G_2` on `rect`: the tip clamped into the `x2`-range.
pub fn g2_f1_on<T: Scalar>(_x1: &T, rect: &Rect<T>) -> T {
    rect.clamp_axis(1, &T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::f1_eval;
    use crate::realkit::Interval;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn minimizer_sets() {
        assert_eq!(m1_f1(&d("-3")), LocalMinSet::singleton(d("1")));
        assert_eq!(m1_f1(&d("0")), LocalMinSet::exact_segment(d("-1"), d("1")));
        assert_eq!(m1_f1(&Dyadic::pow2(-20)), LocalMinSet::singleton(d("-1")));
    }

    #[test]
    fn step_function_values() {
        let mid = AssignmentPolicy::Midpoint;
        assert_eq!(g1_f1(&d("-1/2"), &mid).unwrap(), d("1"));
        assert_eq!(g1_f1(&d("1/2"), &mid).unwrap(), d("-1"));
        assert_eq!(g1_f1(&d("0"), &AssignmentPolicy::Fixed(d("1/4"))).unwrap(), d("1/4"));
        assert_eq!(g1_f1(&d("0"), &mid).unwrap(), d("0"));
        assert!(g1_f1(&d("0"), &AssignmentPolicy::Fixed(d("3/2"))).is_err());
        for x in ["-2", "0", "1"] {
            assert_eq!(g2_f1(&d(x)), d("0"));
        }
    }

    #[test]
    fn narrow_rectangle_steps_to_a() {
        let r = Rect::symmetric(d("1/2"), d("2")).unwrap();
        let mid = AssignmentPolicy::Midpoint;
        assert_eq!(g1_f1_on(&d("-1"), &r, &mid).unwrap(), d("1/2"));
        assert_eq!(g1_f1_on(&d("1"), &r, &mid).unwrap(), d("-1/2"));
        assert_eq!(m1_f1_on(&d("0"), &r), LocalMinSet::exact_segment(d("-1/2"), d("1/2")));
    }

    #[test]
    fn matches_grid_minimization() {
        // exhaustive over a 1/16 grid of [-2, 2]
        let grid: Vec<Dyadic> = (-32..=32).map(|i| Dyadic::frac(i, 4)).collect();
        for j in -16..=16 {
            let x2 = Dyadic::frac(j, 3);
            let best = grid.iter().map(|x1| f1_eval(x1, &x2)).min().unwrap();
            let argmins: Vec<&Dyadic> = grid.iter().filter(|x1| f1_eval(*x1, &x2) == best).collect();
            let hull = m1_f1(&x2).hull();
            assert!(argmins.iter().all(|x| hull.contains(x)));
            let ends = Interval::hull_of(argmins[0].clone(), argmins[argmins.len() - 1].clone());
            assert_eq!(ends, hull);
        }
    }

    #[test]
    fn generic_over_floats() {
        assert_eq!(g1_f1(&-0.25f64, &AssignmentPolicy::Midpoint).unwrap(), 1.0);
        assert_eq!(g1_f1(&0.0f32, &AssignmentPolicy::Fixed(-1.0)).unwrap(), -1.0);
    }
}

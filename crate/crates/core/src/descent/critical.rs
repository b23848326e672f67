//! First-order optimality on a box: `∇f(x)·(y − x) ≥ 0` for every feasible
//! `y`, read with one-sided slopes where `f` has kinks.
//!
//! For the corpus the directional derivative splits into per-coordinate
//! terms (each partial is continuous across the other coordinate's seams),
//! so the condition reduces to: moving up along axis `i` must not descend
//! unless `x_i` sits on the upper face, and likewise downward.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::corpus::{Objective, Rect};
use crate::realkit::Dyadic;

/// Outcome for one coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisCheck {
    pub axis: usize,
    pub at_lower: bool,
    pub at_upper: bool,
    /// `f'(x; +e_i) ≥ −tol` could hold (or the move is infeasible).
    pub up_ok: bool,
    /// `f'(x; −e_i) ≥ −tol` could hold (or the move is infeasible).
    pub down_ok: bool,
}

impl AxisCheck {
    pub fn ok(&self) -> bool {
        self.up_ok && self.down_ok
    }
}

/// Per-axis verdicts. A condition fails only when the slope enclosure
/// certifies a descent steeper than `tol`.
pub fn critical_point_axes(f: &dyn Objective, rect: &Rect, x: &[Dyadic], tol: &Dyadic) -> Vec<AxisCheck> {
    (0..rect.dim())
        .map(|axis| {
            let s = f.slopes(x, axis);
            let at_lower = x[axis] == *rect.lower(axis);
            let at_upper = x[axis] == *rect.upper(axis);
            // f'(x; +e) is the right slope, f'(x; −e) is minus the left slope
            let up_ok = at_upper || *s.right.hi() >= -tol.clone();
            let down_ok = at_lower || *s.left.lo() <= *tol;
            AxisCheck { axis, at_lower, at_upper, up_ok, down_ok }
        })
        .collect()
}

/// Whether `x` is a critical point of `f` on `rect` up to `tol`.
pub fn critical_point_check(f: &dyn Objective, rect: &Rect, x: &[Dyadic], tol: &Dyadic) -> bool {
    rect.contains(x) && critical_point_axes(f, rect, x, tol).iter().all(AxisCheck::ok)
}

/// Exact check for `f1`-like objectives with exact slopes and `tol = 0`.
pub fn critical_point_check_exact(f: &dyn Objective, rect: &Rect, x: &[Dyadic]) -> bool {
    critical_point_check(f, rect, x, &Dyadic::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{F2Params, F1, F2};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn f1_points() {
        let r = Rect::default_square();
        assert!(critical_point_check_exact(&F1, &r, &[d("0"), d("0")]));
        assert!(!critical_point_check_exact(&F1, &r, &[d("2"), d("0")]));
        assert!(!critical_point_check_exact(&F1, &r, &[d("0"), d("1")]));
        // the corner minimizer of the face x2 = 2 is not critical
        assert!(!critical_point_check_exact(&F1, &r, &[d("-1"), d("2")]));
    }

    #[test]
    fn f2_near_flat_edge() {
        let p = F2Params::default();
        let xi_n = p.gstar.seq.term(40);
        let f = F2::new(p, 60);
        let r = Rect::default_square();
        assert!(critical_point_check(&f, &r, &[-xi_n, d("0")], &Dyadic::pow2(-20)));
        assert!(!critical_point_check(&f, &r, &[d("1"), d("0")], &Dyadic::pow2(-20)));
    }

    #[test]
    fn faces_allow_outward_descent() {
        // on [1, 2] × [-2, 2] the point (1, 0) is critical: descent only leftwards
        let r = Rect::new(vec![(d("1"), d("2")), (d("-2"), d("2"))]).unwrap();
        assert!(critical_point_check_exact(&F1, &r, &[d("1"), d("0")]));
        let r = Rect::new(vec![(d("3/2"), d("2")), (d("-2"), d("2"))]).unwrap();
        assert!(critical_point_check_exact(&F1, &r, &[d("3/2"), d("0")]));
    }
}

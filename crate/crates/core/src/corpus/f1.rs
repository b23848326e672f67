//! The six-branch piecewise-bilinear function whose first-coordinate
//! assignment functions are step functions.
//!
//! For `x2 <= 0`:
//!
//! ```text
//! (x2/2 - 1) x1 - (3/2 x2 + 1)      x1 < -1
//! (x2 x1 - 3 x2) / 2                |x1| <= 1
//! (1 - x2/2) x1 - (x2/2 + 1)        x1 > 1
//! ```
//!
//! and for `x2 >= 0`:
//!
//! ```text
//! -(1 + x2/2) x1 + (x2/2 - 1)       x1 < -1
//! (x2 x1 + 3 x2) / 2                |x1| <= 1
//! (1 + x2/2) x1 + (3/2 x2 - 1)      x1 > 1
//! ```
//!
//! Neighbouring formulas agree on the seams `x1 = ±1` and `x2 = 0`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::corpus::Rect;
use crate::realkit::Dyadic;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum F1Branch {
    LeftLower,
    MidLower,
    RightLower,
    LeftUpper,
    MidUpper,
    RightUpper,
}

impl F1Branch {
    pub const ALL: [F1Branch; 6] = [
        F1Branch::LeftLower,
        F1Branch::MidLower,
        F1Branch::RightLower,
        F1Branch::LeftUpper,
        F1Branch::MidUpper,
        F1Branch::RightUpper,
    ];

    /// Branch owning `(x1, x2)`; seams go to the lower/middle formula.
    pub fn locate<T: Scalar>(x1: &T, x2: &T) -> F1Branch {
        let one = T::one();
        let upper = *x2 > T::zero();
        let col = if *x1 < -one.clone() {
            0
        } else if *x1 > one {
            2
        } else {
            1
        };
        match (upper, col) {
            (false, 0) => F1Branch::LeftLower,
            (false, 1) => F1Branch::MidLower,
            (false, _) => F1Branch::RightLower,
            (true, 0) => F1Branch::LeftUpper,
            (true, 1) => F1Branch::MidUpper,
            (true, _) => F1Branch::RightUpper,
        }
    }

    /// The branch formula, evaluated anywhere in the plane.
    pub fn value<T: Scalar>(self, x1: &T, x2: &T) -> T {
        let one = T::one();
        let h2 = x2.half();
        let three = T::from_i32(3);
        let (x1, x2) = (x1.clone(), x2.clone());
        match self {
            F1Branch::LeftLower => (h2.clone() - one.clone()) * x1 - (three * h2 + one),
            F1Branch::MidLower => (x2.clone() * x1 - three * x2).half(),
            F1Branch::RightLower => (one.clone() - h2.clone()) * x1 - (h2 + one),
            F1Branch::LeftUpper => -((one.clone() + h2.clone()) * x1) + (h2 - one),
            F1Branch::MidUpper => (x2.clone() * x1 + three * x2).half(),
            F1Branch::RightUpper => (one.clone() + h2.clone()) * x1 + (three * h2 - one),
        }
    }

    /// Gradient `(∂/∂x1, ∂/∂x2)` of the branch formula.
    pub fn gradient<T: Scalar>(self, x1: &T, x2: &T) -> (T, T) {
        let one = T::one();
        let three = T::from_i32(3);
        let h1 = x1.half();
        let h2 = x2.half();
        match self {
            F1Branch::LeftLower => (h2 - one, h1 - three.half()),
            F1Branch::MidLower => (h2, (x1.clone() - three).half()),
            F1Branch::RightLower => (one.clone() - h2, -h1 - one.half()),
            F1Branch::LeftUpper => (-(one.clone() + h2), -h1 + one.half()),
            F1Branch::MidUpper => (h2, (x1.clone() + three).half()),
            F1Branch::RightUpper => (one + h2, h1 + three.half()),
        }
    }
}

pub fn f1_eval<T: Scalar>(x1: &T, x2: &T) -> T {
    F1Branch::locate(x1, x2).value(x1, x2)
}

/// A partial derivative, or the pair of one-sided slopes on a seam.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Partial<T> {
    Smooth(T),
    Seam { left: T, right: T },
}

impl<T: Scalar> Partial<T> {
    pub fn left(&self) -> &T {
        match self {
            Partial::Smooth(v) => v,
            Partial::Seam { left, .. } => left,
        }
    }

    pub fn right(&self) -> &T {
        match self {
            Partial::Smooth(v) => v,
            Partial::Seam { right, .. } => right,
        }
    }
}

/// Partial derivative of `f1` along `axis` (0 for `x1`, 1 for `x2`).
///
/// On `x1 = ±1` (axis 0) and on `x2 = 0` (axis 1) the function has a kink
/// and both one-sided slopes are returned.
pub fn f1_partial<T: Scalar>(x1: &T, x2: &T, axis: usize) -> Partial<T> {
    let one = T::one();
    let upper = *x2 > T::zero();
    let pick = |row_upper: bool, col: u8| -> F1Branch {
        match (row_upper, col) {
            (false, 0) => F1Branch::LeftLower,
            (false, 1) => F1Branch::MidLower,
            (false, _) => F1Branch::RightLower,
            (true, 0) => F1Branch::LeftUpper,
            (true, 1) => F1Branch::MidUpper,
            (true, _) => F1Branch::RightUpper,
        }
    };
    let col = if *x1 < -one.clone() {
        0
    } else if *x1 > one {
        2
    } else {
        1
    };
    match axis {
        0 => {
            let seam_cols = if *x1 == -one.clone() {
                Some((0, 1))
            } else if *x1 == one {
                Some((1, 2))
            } else {
                None
            };
            match seam_cols {
                Some((l, r)) => {
                    Partial::Seam { left: pick(upper, l).gradient(x1, x2).0, right: pick(upper, r).gradient(x1, x2).0 }
                }
                None => Partial::Smooth(pick(upper, col).gradient(x1, x2).0),
            }
        }
        _ => {
            if x2.is_zero() {
                Partial::Seam { left: pick(false, col).gradient(x1, x2).1, right: pick(true, col).gradient(x1, x2).1 }
            } else {
                Partial::Smooth(pick(upper, col).gradient(x1, x2).1)
            }
        }
    }
}

/// Per-axis Lipschitz constants of `f1` on a rectangle, read off the
/// branch coefficients: `|∂1| ≤ 1 + B/2`, `|∂2| ≤ (A + 3)/2` with
/// `A = max|x1|`, `B = max|x2|`.
pub fn f1_lipschitz(rect: &Rect) -> Vec<Dyadic> {
    let a = rect.max_abs(0);
    let b = rect.max_abs(1);
    vec![Dyadic::one() + b.half(), (a + Dyadic::from(3)).half()]
}

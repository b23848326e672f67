//! Scalar abstraction for the exactly-piecewise-linear parts of the corpus.
//!
//! `f1`, its assignment functions and the Gauss-Seidel engine only need ring
//! operations, halving and ordering, so they run unchanged over `f32`/`f64`,
//! exact dyadics and general big rationals. Everything that needs a certified
//! transcendental stays on [`Dyadic`] and [`Interval`](crate::Interval).

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::realkit::Dyadic;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when the arithmetic never rounds.
    const EXACT: bool;

    fn from_dyadic(d: &Dyadic) -> Self;

    fn from_i32(v: i32) -> Self;

    fn half(&self) -> Self;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn clamp_to(&self, lo: &Self, hi: &Self) -> Self {
        Self::min_of(Self::max_of(self.clone(), lo.clone()), hi.clone())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn from_dyadic(d: &Dyadic) -> Self {
        d.to_f64()
    }
    fn from_i32(v: i32) -> Self {
        v as f64
    }
    fn half(&self) -> Self {
        self * 0.5
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn from_dyadic(d: &Dyadic) -> Self {
        d.to_f64() as f32
    }
    fn from_i32(v: i32) -> Self {
        v as f32
    }
    fn half(&self) -> Self {
        self * 0.5
    }
}

impl Scalar for Dyadic {
    const EXACT: bool = true;
    fn from_dyadic(d: &Dyadic) -> Self {
        d.clone()
    }
    fn from_i32(v: i32) -> Self {
        Dyadic::from(v)
    }
    fn half(&self) -> Self {
        Dyadic::half(self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn from_dyadic(d: &Dyadic) -> Self {
        d.to_rational()
    }
    fn from_i32(v: i32) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn half(&self) -> Self {
        self / BigRational::from_integer(BigInt::from(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halves<T: Scalar>(x: T) -> T {
        x.half().half()
    }

    #[test]
    fn halving_agrees_across_scalars() {
        let d = Dyadic::frac(-3, 1);
        assert_eq!(halves(d.clone()), Dyadic::frac(-3, 3));
        assert_eq!(halves(-1.5f64), -0.375);
        assert_eq!(halves(-1.5f32), -0.375);
        assert_eq!(halves(d.to_rational()), Dyadic::frac(-3, 3).to_rational());
    }

    #[test]
    fn clamp() {
        let lo = Dyadic::from(-1);
        let hi = Dyadic::from(1);
        assert_eq!(Dyadic::from(3).clamp_to(&lo, &hi), hi);
        assert_eq!(Dyadic::frac(1, 2).clamp_to(&lo, &hi), Dyadic::frac(1, 2));
        assert_eq!(Scalar::clamp_to(&-7.0f64, &-1.0, &1.0), -1.0);
    }
}

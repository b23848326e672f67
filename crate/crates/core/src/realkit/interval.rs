//! Closed intervals with dyadic endpoints and a certified exponential.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Dyadic;
use crate::error::CorpusError;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 53;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self, CorpusError> {
        if lo > hi {
            return Err(CorpusError::EmptyInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Builds from endpoints given in either order.
    pub fn hull_of(a: Dyadic, b: Dyadic) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    /// Outward enclosure of a rational at grid `2^-prec`.
    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        if let Some(d) = Dyadic::from_rational(r) {
            return Self::point(d);
        }
        let g = -(prec as i64);
        Interval { lo: Dyadic::floor_rational(r, g), hi: Dyadic::ceil_rational(r, g) }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn into_bounds(self) -> (Dyadic, Dyadic) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.midpoint(&self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `max(|lo|, |hi|)`.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Every point is strictly positive.
    pub fn certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(other.lo.clone()), hi: self.hi.clone().max(other.hi.clone()) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn scale(&self, k: &Dyadic) -> Interval {
        Interval::hull_of(&self.lo * k, &self.hi * k)
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn square(&self) -> Interval {
        if self.contains_zero() {
            let m = self.mag();
            Interval { lo: Dyadic::zero(), hi: &m * &m }
        } else {
            Interval::hull_of(self.lo.square(), self.hi.square())
        }
    }

    /// Rounds both endpoints outward to multiples of `2^grid`.
    pub fn round_out(&self, grid: i64) -> Interval {
        Interval { lo: self.lo.floor_to(grid), hi: self.hi.ceil_to(grid) }
    }

    /// Outward-rounded division by a positive integer at grid `2^grid`.
    fn div_int(&self, k: u64, grid: i64) -> Interval {
        let k = BigInt::from(k);
        let div_at = |x: &Dyadic, up: bool| -> Dyadic {
            // x / k at grid: scale x to integer units of 2^grid first
            let num = scaled_floor(x, grid, up);
            let (q, r) = num.div_mod_floor(&k);
            let q = if up && !r.is_zero() { q + 1 } else { q };
            Dyadic::new(q, grid)
        };
        Interval { lo: div_at(&self.lo, false), hi: div_at(&self.hi, true) }
    }

    /// Certified enclosure of `exp` over this interval.
    ///
    /// The result contains `e^y` for every `y` in `self` and its width is at
    /// most `width(self) · e^hi + 2^-prec`. Widths shrink as `prec` grows.
    pub fn exp(&self, prec: u32) -> Interval {
        let prec = prec.max(1);
        if self.lo.is_zero() && self.hi.is_zero() {
            return Interval::point(Dyadic::one());
        }
        let p = prec as i64;
        let target = -(p + 4);
        let lo = exp_point(&self.lo, target).lo;
        let hi = exp_point(&self.hi, target).hi;
        let pad = Dyadic::pow2(-(p + 2));
        let grid = -(p + 3);
        let lo = (&lo - &pad).floor_to(grid);
        let hi = (&hi + &pad).ceil_to(grid);
        // e^y > 0 always
        let lo = if lo.is_positive() { lo } else { Dyadic::zero() };
        Interval { lo, hi }
    }
}

/// `floor(x / 2^grid)` or `ceil(...)` as an integer.
fn scaled_floor(x: &Dyadic, grid: i64, up: bool) -> BigInt {
    let shift = x.exponent() - grid;
    if shift >= 0 {
        x.mantissa() << shift as u64
    } else {
        let d = BigInt::one() << (-shift) as u64;
        let (q, r) = x.mantissa().div_mod_floor(&d);
        if up && !r.is_zero() {
            q + 1
        } else {
            q
        }
    }
}

/// Enclosure of `e^y` with width at most `2^target`.
fn exp_point(y: &Dyadic, target: i64) -> Interval {
    if y.is_zero() {
        return Interval::point(Dyadic::one());
    }
    // argument reduction: z = y / 2^s with |z| <= 1/2
    let s = (y.magnitude_bits().unwrap_or(0) + 1).max(0);
    let z = y.mul_pow2(-s);
    // headroom for the 2^s error growth of repeated squaring and for the
    // magnitude of the result
    let mag_bits = {
        let m = y.abs().ceil_to(0);
        let m = m.to_f64();
        (m * 1.45).ceil() as i64 + 1
    };
    let mut extra = 12;
    loop {
        let grid = target - s - mag_bits.max(0) - extra;
        let enc = exp_reduced(&z, s, grid);
        if enc.width() <= Dyadic::pow2(target) {
            return enc;
        }
        extra += 16;
    }
}

fn exp_reduced(z: &Dyadic, squarings: i64, grid: i64) -> Interval {
    let zi = Interval::point(z.clone());
    let mut sum = Interval::point(Dyadic::one());
    let mut term = Interval::point(Dyadic::one());
    let eps = Dyadic::pow2(grid);
    let mut k = 1u64;
    loop {
        term = (&term * &zi).div_int(k, grid);
        sum = &sum + &term;
        if term.mag() <= eps || k > 4096 {
            break;
        }
        k += 1;
    }
    // remaining terms: each ratio is at most |z|/(k+1) <= 1/4
    let tail = term.mag();
    sum = Interval { lo: &sum.lo - &tail, hi: &sum.hi + &tail };
    for _ in 0..squarings {
        sum = sum.square().round_out(grid);
    }
    sum
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        Interval { lo, hi }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        &self + &rhs
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        &self - &rhs
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        &self * &rhs
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl From<Dyadic> for Interval {
    fn from(d: Dyadic) -> Self {
        Interval::point(d)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

//! Exact binary rationals `m · 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// A dyadic rational `mantissa · 2^exponent` kept in canonical form: the
/// mantissa is odd, or the value is zero with exponent 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        let mut mantissa = mantissa.into();
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        let mut exponent = exponent;
        if tz > 0 {
            mantissa >>= tz;
            exponent += tz as i64;
        }
        Dyadic { mantissa, exponent }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: k }
    }

    /// `numer / 2^k`.
    pub fn frac(numer: i64, k: i64) -> Self {
        Self::new(numer, -k)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        (self + other).half()
    }

    /// Smallest `k` with `|self| < 2^k` (`None` for zero).
    pub fn magnitude_bits(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mantissa.bits() as i64 + self.exponent)
        }
    }

    /// Largest multiple of `2^grid` that is `<= self`.
    pub fn floor_to(&self, grid: i64) -> Self {
        if self.exponent >= grid {
            return self.clone();
        }
        let shift = (grid - self.exponent) as u64;
        let q = self.mantissa.div_floor(&(BigInt::one() << shift));
        Self::new(q, grid)
    }

    /// Smallest multiple of `2^grid` that is `>= self`.
    pub fn ceil_to(&self, grid: i64) -> Self {
        -(-self).floor_to(grid)
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    /// Exact conversion from a rational whose denominator is a power of two.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let denom = r.denom();
        if !denom.is_positive() {
            return None;
        }
        let tz = denom.trailing_zeros().unwrap_or(0);
        if (denom >> tz) != BigInt::one() {
            return None;
        }
        Some(Self::new(r.numer().clone(), -(tz as i64)))
    }

    /// Largest multiple of `2^grid` below the rational `r`.
    pub fn floor_rational(r: &BigRational, grid: i64) -> Self {
        let scaled = if grid <= 0 {
            r * BigRational::from_integer(BigInt::one() << (-grid) as u64)
        } else {
            r / BigRational::from_integer(BigInt::one() << grid as u64)
        };
        Self::new(scaled.floor().to_integer(), grid)
    }

    pub fn ceil_rational(r: &BigRational, grid: i64) -> Self {
        -Self::floor_rational(&-r, grid)
    }

    /// Nearest `f64`; used only for display and plotting output.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let keep = bits.min(60);
        let m = (&self.mantissa >> (bits - keep) as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exponent + (bits - keep);
        // scale in steps so subnormal results are not flushed early
        let mut e = e.clamp(-2200, 2200);
        let mut v = m;
        while e != 0 {
            let step = e.clamp(-1000, 1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        v
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Self::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1i64 << 52), raw_exp - 1075) };
        Some(Self::new(sign * m, e))
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<i32> for Dyadic {
    fn from(v: i32) -> Self {
        Self::from_int(v)
    }
}

fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
    let e = a.exponent.min(b.exponent);
    let ma = &a.mantissa << (a.exponent - e) as u64;
    let mb = &b.mantissa << (b.exponent - e) as u64;
    (ma, mb, e)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb, _) = aligned(self, other);
        ma.cmp(&mb)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (ma, mb, e) = aligned(self, rhs);
        Dyadic::new(ma + mb, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        let (ma, mb, e) = aligned(self, rhs);
        Dyadic::new(ma - mb, e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // product of odd mantissas is odd: already canonical
        Dyadic { mantissa: &self.mantissa * &rhs.mantissa, exponent: self.exponent + rhs.exponent }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &'a Dyadic) -> Dyadic {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Dyadic> for &'a Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Dyadic {
    /// Integers print bare, everything else as `p/2^k` written out (`-3/4`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << self.exponent as u64)
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << (-self.exponent) as u64)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({})", self)
    }
}

/// Parses a rational literal: `p/q`, a decimal string, or `2^k` / `-2^k`.
/// The result is exact; nothing is rounded.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Malformed(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((neg, rest)) =
        t.strip_prefix("-2^").map(|r| (true, r)).or_else(|| t.strip_prefix("2^").map(|r| (false, r)))
    {
        let k: i64 = rest.trim().parse().map_err(|_| bad())?;
        if k.abs() > 1 << 20 {
            return Err(bad());
        }
        let v = Dyadic::pow2(k).to_rational();
        return Ok(if neg { -v } else { v });
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", int_part, frac_part);
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let v = BigRational::new(numer, denom);
    Ok(if neg { -v } else { v })
}

impl FromStr for Dyadic {
    type Err = ParseError;

    /// Accepts the same literals as [`parse_rational`] but rejects anything
    /// that is not exactly a binary fraction.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = parse_rational(s)?;
        Dyadic::from_rational(&r).ok_or_else(|| ParseError::NotDyadic(s.trim().to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    m: String,
    e: i64,
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DyadicRepr { m: self.mantissa.to_string(), e: self.exponent }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DyadicRepr::deserialize(deserializer)?;
        let m: BigInt = repr.m.parse().map_err(serde::de::Error::custom)?;
        Ok(Dyadic::new(m, repr.e))
    }
}

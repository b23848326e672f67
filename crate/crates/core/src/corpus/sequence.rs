//! Strictly decreasing dyadic sequences `ξ_n ↓ ξ*` that parameterize `g*`.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::CorpusError;
use crate::realkit::Dyadic;

/// Fractional bits used for the dyadic lower bound of a non-dyadic `ξ*`.
const LOWER_BOUND_BITS: i64 = 128;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// `ξ_n = ξ* + 2^-n` when `ξ*` is dyadic. Otherwise `ξ*` is first
    /// rounded up to `n + 1` fractional bits, which keeps every term dyadic,
    /// the sequence strictly decreasing and `|ξ_n − ξ*| < 2^-n + 2^-(n+1)`.
    Standard {
        #[serde(with = "rational_text")]
        xi_star: BigRational,
    },
    /// Agrees with `Standard { base }` on `n <= hidden`; afterwards
    /// `ξ_n = base + 2^-(hidden+1) (1 + 2^-(n-hidden))`, so the limit is
    /// `base + 2^-(hidden+1)`. Nothing in a finite prefix of length
    /// `hidden` reveals which of the two sequences is being read.
    Plateau { base: Dyadic, hidden: u32 },
}

impl SequenceSpec {
    pub fn standard(xi_star: Dyadic) -> Self {
        SequenceSpec::Standard { xi_star: xi_star.to_rational() }
    }

    pub fn standard_rational(xi_star: BigRational) -> Self {
        SequenceSpec::Standard { xi_star }
    }

    pub fn plateau(base: Dyadic, hidden: u32) -> Self {
        SequenceSpec::Plateau { base, hidden }
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let limit = self.limit();
        if !limit.is_positive() || limit >= BigRational::one() {
            return Err(CorpusError::BadParameter {
                name: "xi_star",
                reason: format!("limit {limit} must lie in (0, 1)"),
            });
        }
        if let SequenceSpec::Plateau { base, .. } = self {
            if base.is_negative() {
                return Err(CorpusError::BadParameter {
                    name: "base",
                    reason: "plateau base must be nonnegative".into(),
                });
            }
        }
        Ok(())
    }

    /// The term `ξ_n` (`n >= 1`; `n = 0` extends the same formula).
    pub fn term(&self, n: u32) -> Dyadic {
        let n = n as i64;
        match self {
            SequenceSpec::Standard { xi_star } => match Dyadic::from_rational(xi_star) {
                Some(x) => x + Dyadic::pow2(-n),
                None => Dyadic::ceil_rational(xi_star, -(n + 1)) + Dyadic::pow2(-n),
            },
            SequenceSpec::Plateau { base, hidden } => {
                let k = *hidden as i64;
                if n <= k {
                    base + &Dyadic::pow2(-n)
                } else {
                    base + &Dyadic::pow2(-k - 1) + Dyadic::pow2(-n - 1)
                }
            }
        }
    }

    /// The exact limit `ξ*`.
    pub fn limit(&self) -> BigRational {
        match self {
            SequenceSpec::Standard { xi_star } => xi_star.clone(),
            SequenceSpec::Plateau { base, hidden } => (base + &Dyadic::pow2(-(*hidden as i64) - 1)).to_rational(),
        }
    }

    /// The limit when an evaluator is allowed to know it. Plateau limits are
    /// hidden: only their terms and the lower bound are observable.
    pub fn known_limit(&self) -> Option<&BigRational> {
        match self {
            SequenceSpec::Standard { xi_star } => Some(xi_star),
            SequenceSpec::Plateau { .. } => None,
        }
    }

    /// A dyadic `ℓ <= ξ*` that evaluators may use.
    pub fn lower_bound(&self) -> Dyadic {
        match self {
            SequenceSpec::Standard { xi_star } => {
                Dyadic::from_rational(xi_star).unwrap_or_else(|| Dyadic::floor_rational(xi_star, -LOWER_BOUND_BITS))
            }
            SequenceSpec::Plateau { base, .. } => base.clone(),
        }
    }

    /// Whether `|x| <= ξ*` can be decided without the hidden part.
    pub fn certainly_within_limit(&self, x_abs: &Dyadic) -> bool {
        if *x_abs <= self.lower_bound() {
            return true;
        }
        match self.known_limit() {
            Some(l) => x_abs.to_rational() <= *l,
            None => false,
        }
    }
}

impl Default for SequenceSpec {
    fn default() -> Self {
        SequenceSpec::standard(Dyadic::frac(1, 1))
    }
}

/// Serializes a rational as the text `p/q` (or `p`).
pub mod rational_text {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        crate::realkit::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn standard_terms() {
        let s = SequenceSpec::standard(d("1/2"));
        assert_eq!(s.term(1), d("1"));
        assert_eq!(s.term(3), d("5/8"));
        assert_eq!(s.limit(), rat(1, 2));
    }

    #[test]
    fn non_dyadic_limit_stays_dyadic_and_decreasing() {
        let s = SequenceSpec::standard_rational(rat(1, 20));
        s.validate().unwrap();
        let limit = s.limit();
        for n in 1..80 {
            let a = s.term(n);
            let b = s.term(n + 1);
            assert!(b < a);
            let err = a.to_rational() - &limit;
            assert!(err.is_positive());
            assert!(err < Dyadic::pow2(-(n as i64)).to_rational() * rat(3, 2));
        }
        assert!(s.lower_bound().to_rational() <= limit);
    }

    #[test]
    fn plateau_boundary_and_limit() {
        let k = 10;
        let p = SequenceSpec::plateau(d("1/2"), k);
        let s = SequenceSpec::standard(d("1/2"));
        for n in 1..=k {
            assert_eq!(p.term(n), s.term(n));
        }
        assert_eq!(p.term(k + 1), d("1/2") + Dyadic::new(3, -(k as i64) - 2));
        assert!(p.term(k + 1) < p.term(k));
        assert_eq!(p.limit() - s.limit(), Dyadic::pow2(-11).to_rational());
        for n in 1..(k + 64) {
            assert!(p.term(n + 1) < p.term(n));
        }
        assert!(p.known_limit().is_none());
    }

    #[test]
    fn validation() {
        assert!(SequenceSpec::standard(d("1")).validate().is_err());
        assert!(SequenceSpec::standard(d("0")).validate().is_err());
        assert!(SequenceSpec::standard(d("0.9375")).validate().is_ok());
        assert!(SequenceSpec::plateau(d("-1/4"), 3).validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        for s in [SequenceSpec::standard_rational(rat(1, 20)), SequenceSpec::plateau(d("3/8"), 7)] {
            let text = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<SequenceSpec>(&text).unwrap(), s);
        }
    }
}

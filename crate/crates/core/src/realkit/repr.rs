//! Representations of reals by dyadic sequences with the `2^-n` error
//! contract, and the checks built on top of them.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use super::Dyadic;

/// A sequence `n ↦ r_n` that promises `|x − r_n| ≤ 2^-n` for the real `x`
/// it represents.
#[derive(Clone)]
pub struct Representation {
    accessor: Arc<dyn Fn(u32) -> Dyadic + Send + Sync>,
}

impl Representation {
    pub fn new(accessor: impl Fn(u32) -> Dyadic + Send + Sync + 'static) -> Self {
        Representation { accessor: Arc::new(accessor) }
    }

    /// The constant representation of a dyadic.
    pub fn exact(x: Dyadic) -> Self {
        Self::new(move |_| x.clone())
    }

    /// Rounds a rational down to `n + guard` fractional bits, so the error at
    /// index `n` is below `2^-(n+guard)`.
    pub fn truncation(x: BigRational, guard: u32) -> Self {
        Self::new(move |n| Dyadic::floor_rational(&x, -((n + guard) as i64)))
    }

    pub fn at(&self, n: u32) -> Dyadic {
        (self.accessor)(n)
    }

    /// The error bound `2^-n` attached to index `n`.
    pub fn contract_bound(n: u32) -> Dyadic {
        Dyadic::pow2(-(n as i64))
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation").finish_non_exhaustive()
    }
}

/// True iff `|limit − rep(n)| ≤ 2^-n` for every `n ≤ up_to`.
pub fn effective_convergence_check(rep: &Representation, limit: &BigRational, up_to: u32) -> bool {
    (0..=up_to).all(|n| {
        let err = (limit - rep.at(n).to_rational()).abs();
        err <= Representation::contract_bound(n).to_rational()
    })
}

/// Index whose term is guaranteed within `2^-target` of the limit.
pub fn stopping_index(_rep: &Representation, target: u32) -> u32 {
    target
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn third() -> BigRational {
        BigRational::new(1.into(), 3.into())
    }

    #[test]
    fn truncated_third_converges_effectively() {
        let rep = Representation::truncation(third(), 2);
        assert!(effective_convergence_check(&rep, &third(), 20));
    }

    #[test]
    fn constant_zero_does_not_represent_one() {
        let rep = Representation::exact(Dyadic::zero());
        assert!(!effective_convergence_check(&rep, &BigRational::from_integer(1.into()), 1));
    }

    #[test]
    fn standard_sequence_meets_contract_exactly() {
        let rep = Representation::new(|n| Dyadic::frac(1, 1) + Dyadic::pow2(-(n as i64)));
        let half = Dyadic::frac(1, 1).to_rational();
        assert!(effective_convergence_check(&rep, &half, 30));
        for n in 0..30 {
            let err = (rep.at(n).to_rational() - &half).abs();
            assert_eq!(err, Representation::contract_bound(n).to_rational());
        }
    }

    #[test]
    fn stopping_index_is_the_contract_index() {
        let rep = Representation::exact(Dyadic::zero());
        assert_eq!(stopping_index(&rep, 10), 10);
        assert_eq!(stopping_index(&rep, 0), 0);
    }

    #[test]
    fn triangle_inequality_on_fixtures() {
        let reps = [
            Representation::truncation(third(), 2),
            Representation::truncation(BigRational::new((-7).into(), 5.into()), 0),
            Representation::new(|n| Dyadic::frac(1, 1) + Dyadic::pow2(-(n as i64))),
        ];
        for rep in &reps {
            for n in 0..24u32 {
                for m in n + 1..24 {
                    let gap = (rep.at(n) - rep.at(m)).abs();
                    let bound = Representation::contract_bound(n) + Representation::contract_bound(m);
                    assert!(gap <= bound, "n={n} m={m}");
                }
            }
        }
    }
}

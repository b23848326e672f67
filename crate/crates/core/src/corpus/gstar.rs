//! The convex `C¹` series `g*(x) = Σ_{n≥1} 2^-n g_n(x)` with
//! `g_n(x) = (|x| − ξ_n)₊²`, and its piecewise-linear derivative.
//!
//! `g*` vanishes exactly on `[−ξ*, ξ*]`. Between consecutive terms,
//! on `ℐ_n = (ξ_n, ξ_{n−1}]`, the derivative is `c1(n)·x − c0(n)` with
//! `c1(n) = 2^-(n−2)` and `c0(n) = Σ_{k≥n} ξ_k 2^-(k−1)`; on the mirrored
//! interval `ℐ_{−n}` it is `c1(n)·x + c0(n)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::SequenceSpec;
use crate::error::CorpusError;
use crate::realkit::{Dyadic, Interval};

pub const DEFAULT_TRUNCATION: u32 = 53;
pub const DEFAULT_PROBE_BUDGET: u32 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GStarParams {
    pub seq: SequenceSpec,
    /// Number of series terms summed exactly before the tail bound.
    #[serde(default = "default_truncation")]
    pub truncation: u32,
    /// How many `ξ_n` the derivative may inspect to locate `x`.
    #[serde(default = "default_probe_budget")]
    pub probe_budget: u32,
}

fn default_truncation() -> u32 {
    DEFAULT_TRUNCATION
}

fn default_probe_budget() -> u32 {
    DEFAULT_PROBE_BUDGET
}

impl GStarParams {
    pub fn new(seq: SequenceSpec) -> Self {
        GStarParams { seq, truncation: DEFAULT_TRUNCATION, probe_budget: DEFAULT_PROBE_BUDGET }
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        self.seq.validate()?;
        if self.truncation == 0 {
            return Err(CorpusError::BadParameter { name: "truncation", reason: "must be >= 1".into() });
        }
        if self.probe_budget == 0 {
            return Err(CorpusError::BadParameter { name: "probe_budget", reason: "must be >= 1".into() });
        }
        Ok(())
    }
}

impl Default for GStarParams {
    fn default() -> Self {
        GStarParams::new(SequenceSpec::default())
    }
}

/// `g_n(x)` for the term `ξ_n`.
pub fn g_term(xi_n: &Dyadic, x: &Dyadic) -> Dyadic {
    let excess = &x.abs() - xi_n;
    if excess.is_positive() {
        excess.square()
    } else {
        Dyadic::zero()
    }
}

/// Enclosure `[S_N, S_N + T_N]` of `g*(x)`: the exact partial sum of `N`
/// terms plus a bound on the rest. For `n > N` every `g_n(x)` is at most
/// `(|x| − ℓ)₊²` where `ℓ <= ξ*` is the sequence's lower bound, so the tail
/// is zero whenever `|x| <= ξ*` is certain.
pub fn gstar_eval(p: &GStarParams, x: &Dyadic, truncation: u32) -> Interval {
    let n_max = truncation.max(1);
    let partial: Dyadic = (1..=n_max).map(|n| g_term(&p.seq.term(n), x).mul_pow2(-(n as i64))).sum();
    let ax = x.abs();
    let tail = if p.seq.certainly_within_limit(&ax) {
        Dyadic::zero()
    } else {
        g_term(&p.seq.lower_bound(), &ax).mul_pow2(-(n_max as i64))
    };
    let hi = &partial + &tail;
    Interval::hull_of(partial, hi)
}

/// Slope `c1(n) = 2^-(n−2)` of `g*'` on `ℐ_{±n}`.
pub fn c1(n: u32) -> Dyadic {
    Dyadic::pow2(2 - n as i64)
}

/// Enclosure of `c0(n) = Σ_{k≥n} ξ_k 2^-(k−1)` from `terms` exact summands
/// plus the tail `Σ_{k≥n+terms} ξ_k 2^-(k−1) ∈ [ℓ, ξ_n]·2^-(n+terms−2)`.
pub fn c0(seq: &SequenceSpec, n: u32, terms: u32) -> Interval {
    let terms = terms.max(1);
    let partial: Dyadic = (n..n + terms).map(|k| seq.term(k).mul_pow2(1 - k as i64)).sum();
    let scale = 2 - (n + terms) as i64;
    let lo = &partial + &seq.lower_bound().mul_pow2(scale);
    let hi = &partial + &seq.term(n).mul_pow2(scale);
    Interval::hull_of(lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// The enclosure is a two-sided certificate for the true value.
    TwoSided,
    /// Only the sign side is certified: `x` lies below every probed `ξ_n`
    /// but membership in `[−ξ*, ξ*]` could not be decided.
    OneSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivRegion {
    /// `x ∈ ℐ_{±n}`; `negative` selects `ℐ_{−n}`.
    Piece { n: u32, negative: bool },
    /// `x ∈ [−ξ*, ξ*]`.
    Flat,
    /// Below every probed term, undecided.
    Unresolved { probed: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivEnclosure {
    pub value: Interval,
    pub region: DerivRegion,
    pub certification: Certification,
}

/// Locates `|x|` among the terms: `Some(n)` when `|x| ∈ (ξ_n, ξ_{n−1}]`.
fn locate_piece(seq: &SequenceSpec, ax: &Dyadic, budget: u32) -> Option<u32> {
    (1..=budget).find(|&n| *ax > seq.term(n))
}

/// Enclosure of `g*'(x)` from the closed form on the piece containing `x`.
pub fn gstar_deriv(p: &GStarParams, x: &Dyadic, truncation: u32) -> DerivEnclosure {
    let ax = x.abs();
    let negative = x.is_negative();
    if p.seq.certainly_within_limit(&ax) {
        return DerivEnclosure {
            value: Interval::zero(),
            region: DerivRegion::Flat,
            certification: Certification::TwoSided,
        };
    }
    let budget = p.probe_budget.max(1);
    match locate_piece(&p.seq, &ax, budget) {
        Some(n) => {
            // for x > 0: c1·x − c0; odd symmetry gives the negative side
            let pos = &Interval::point(c1(n) * &ax) - &c0(&p.seq, n, truncation);
            let value = if negative { -pos } else { pos };
            DerivEnclosure { value, region: DerivRegion::Piece { n, negative }, certification: Certification::TwoSided }
        }
        None => {
            // 0 <= g*'(|x|) <= g*'(ξ_budget) by monotonicity; ξ_b lies in ℐ_{b+1}
            let xi_b = p.seq.term(budget);
            let at_xi = &Interval::point(c1(budget + 1) * &xi_b) - &c0(&p.seq, budget + 1, truncation);
            let upper = at_xi.hi().clone().max(Dyadic::zero());
            let pos = Interval::hull_of(Dyadic::zero(), upper);
            let value = if negative { -pos } else { pos };
            DerivEnclosure {
                value,
                region: DerivRegion::Unresolved { probed: budget },
                certification: Certification::OneSided,
            }
        }
    }
}

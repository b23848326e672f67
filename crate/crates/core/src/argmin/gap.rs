//! How far a continuous approximant must stay from the step function `G_1`.
//!
//! `G_1` jumps from `a` (for `x2 < 0`) to `-a` (for `x2 > 0`). A function
//! with Lipschitz constant `L` moves by at most `2Lδ` between `-δ` and `δ`,
//! so it misses one of the two step values by at least `a − Lδ`.

use serde::{Deserialize, Serialize};

use crate::realkit::Dyadic;

/// An approximant of the step `G_1` with a known Lipschitz bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Approximant {
    Constant {
        value: Dyadic,
    },
    /// `clamp(-slope · (x - shift), -level, level)`.
    Ramp {
        slope: Dyadic,
        shift: Dyadic,
        level: Dyadic,
    },
    /// `G_1` itself with step value `level` and value `at_zero` at 0.
    Step {
        level: Dyadic,
        at_zero: Dyadic,
    },
}

impl Approximant {
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        match self {
            Approximant::Constant { value } => value.clone(),
            Approximant::Ramp { slope, shift, level } => {
                let raw = -(slope * &(x - shift));
                raw.max(-level.clone()).min(level.clone())
            }
            Approximant::Step { level, at_zero } => {
                if x.is_negative() {
                    level.clone()
                } else if x.is_positive() {
                    -level.clone()
                } else {
                    at_zero.clone()
                }
            }
        }
    }

    /// A Lipschitz constant, or `None` for the discontinuous step.
    pub fn lipschitz(&self) -> Option<Dyadic> {
        match self {
            Approximant::Constant { .. } => Some(Dyadic::from(0)),
            Approximant::Ramp { slope, .. } => Some(slope.abs()),
            Approximant::Step { .. } => None,
        }
    }
}

/// `max(|G(-δ) − a|, |G(δ) + a|)` for step value `a`.
pub fn approx_gap(g: impl Fn(&Dyadic) -> Dyadic, delta: &Dyadic, level: &Dyadic) -> Dyadic {
    let left = (g(&-delta) - level).abs();
    let right = (g(delta) + level).abs();
    left.max(right)
}

/// The guaranteed gap `a − Lδ` for any `L`-Lipschitz approximant.
pub fn gap_lower_bound(lipschitz: &Dyadic, delta: &Dyadic, level: &Dyadic) -> Dyadic {
    level - &(lipschitz * delta)
}

/// A family of approximants with Lipschitz constant at most `l`: constants
/// across `[-a, a]`, ramps of slope `l` and `l/2` with shifts around 0 and
/// reduced levels.
pub fn lipschitz_family(l: &Dyadic, delta: &Dyadic, level: &Dyadic) -> Vec<Approximant> {
    let mut out = vec![];
    for k in -4..=4i64 {
        out.push(Approximant::Constant { value: (level * &Dyadic::from(k)).mul_pow2(-2) });
    }
    for slope in [l.clone(), l.half()] {
        for s in -2..=2i64 {
            let shift = (delta * &Dyadic::from(s)).half();
            for lv in [level.clone(), level.half()] {
                out.push(Approximant::Ramp { slope: slope.clone(), shift: shift.clone(), level: lv });
            }
        }
    }
    out
}

//! Lipschitz approximants of the step `G_1` keep a gap of at least
//! `a − Lδ` at `±δ`, so none gets uniformly closer than `min(1, a)`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{ExperimentReport, Record};
use crate::argmin::{approx_gap, g1_f1_on, gap_lower_bound, lipschitz_family, Approximant, AssignmentPolicy};
use crate::corpus::Rect;
use crate::realkit::Dyadic;
use crate::record;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxGapConfig {
    pub lipschitz: Vec<Dyadic>,
    pub deltas: Vec<Dyadic>,
    /// Half-width of the `x1`-range; the step values of `G_1` are `±min(1, a)`.
    pub a: Dyadic,
}

impl Default for ApproxGapConfig {
    fn default() -> Self {
        ApproxGapConfig {
            lipschitz: [1, 2, 4, 8, 16].into_iter().map(Dyadic::from).collect(),
            deltas: (4..=12).map(|k| Dyadic::pow2(-k)).collect(),
            a: Dyadic::from(2),
        }
    }
}

/// The step value of `G_1` on `[-a, a] × [-2, 2]`, read off the
/// assignment function itself.
pub fn step_level(a: &Dyadic) -> Dyadic {
    let rect = Rect::symmetric(a.clone(), Dyadic::from(2)).expect("a > 0");
    g1_f1_on(&Dyadic::from(-1), &rect, &AssignmentPolicy::Midpoint).expect("singleton off the axis")
}

pub fn exp_approx_gap(cfg: &ApproxGapConfig) -> ExperimentReport {
    let level = step_level(&cfg.a);
    let mut records = vec![];
    for l in &cfg.lipschitz {
        for delta in &cfg.deltas {
            let family = lipschitz_family(l, delta, &level);
            let worst =
                family.iter().map(|g| approx_gap(|x| g.eval(x), delta, &level)).min().expect("family is nonempty");
            records.push(record! {
                "row" => "lipschitz",
                "L" => l.to_string(),
                "delta" => delta.to_string(),
                "level" => level.to_string(),
                "members" => family.len(),
                "min_gap" => worst.to_string(),
                "bound" => gap_lower_bound(l, delta, &level).to_string(),
            });
        }
    }
    for delta in &cfg.deltas {
        let zero = Approximant::Constant { value: Dyadic::from(0) };
        records.push(record! {
            "row" => "constant",
            "L" => "0",
            "delta" => delta.to_string(),
            "level" => level.to_string(),
            "members" => 1,
            "min_gap" => approx_gap(|x| zero.eval(x), delta, &level).to_string(),
            "bound" => level.to_string(),
        });
        let step = Approximant::Step { level: level.clone(), at_zero: Dyadic::from(0) };
        records.push(record! {
            "row" => "step",
            "delta" => delta.to_string(),
            "level" => level.to_string(),
            "members" => 1,
            "min_gap" => approx_gap(|x| step.eval(x), delta, &level).to_string(),
        });
    }
    let (summary, failures) = judge(&records);
    ExperimentReport::new("approx-gap", json!(cfg), records, summary, failures)
}

fn field(r: &Record, k: &str) -> Option<Dyadic> {
    r.get(k)?.as_str()?.parse().ok()
}

pub fn judge(records: &[Record]) -> (Record, Vec<String>) {
    let mut failures = vec![];
    let mut threshold: Option<Dyadic> = None;
    for (i, r) in records.iter().enumerate() {
        let row = r.get("row").and_then(|v| v.as_str()).unwrap_or("");
        let (gap, level) = (field(r, "min_gap"), field(r, "level"));
        if let Some(l) = &level {
            threshold = Some(l.clone().min(Dyadic::from(1)));
        }
        match row {
            "lipschitz" => match (gap, field(r, "bound")) {
                (Some(g), Some(b)) if g >= b => {}
                _ => failures.push(format!("row {i}: gap below the Lipschitz bound")),
            },
            "constant" => {
                if gap.is_none() || gap != level {
                    failures.push(format!("row {i}: constant 0 does not have gap exactly a"));
                }
            }
            "step" => {
                if gap != Some(Dyadic::from(0)) {
                    failures.push(format!("row {i}: the step itself should have gap 0"));
                }
            }
            _ => failures.push(format!("row {i}: unknown row kind")),
        }
    }
    let summary = record! {
        "cells" => records.iter().filter(|r| r.get("row") == Some(&json!("lipschitz"))).count(),
        "threshold" => threshold.map(|t| t.to_string()),
    };
    (summary, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn default_grid_passes() {
        let rep = exp_approx_gap(&ApproxGapConfig::default());
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.summary["threshold"], json!("1"));
    }

    #[test]
    fn narrow_rectangle_halves_the_threshold() {
        assert_eq!(step_level(&d("1/2")), d("1/2"));
        let cfg = ApproxGapConfig { a: d("1/2"), ..Default::default() };
        let rep = exp_approx_gap(&cfg);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.summary["threshold"], json!("1/2"));
    }

    #[test]
    fn l4_delta_2_8_cell() {
        let cfg = ApproxGapConfig { lipschitz: vec![d("4")], deltas: vec![Dyadic::pow2(-8)], a: d("2") };
        let rep = exp_approx_gap(&cfg);
        let gap: Dyadic = rep.records[0]["min_gap"].as_str().unwrap().parse().unwrap();
        assert!(gap >= d("1") - Dyadic::pow2(-6));
    }
}

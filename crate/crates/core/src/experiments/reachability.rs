//! The `x1`-minimizer of `f2(·, x2)` as `x2 → ±0`: it approaches `∓ξ*`
//! monotonically from outside, so only the two ends of the flat minimizer
//! segment are reachable along the second coordinate.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{ExperimentReport, Record};
use crate::argmin::{g1_f2, m1_f2};
use crate::corpus::sequence::rational_text;
use crate::corpus::{F2Params, GStarParams, Rect, SequenceSpec};
use crate::error::ArgminError;
use crate::realkit::{Dyadic, Interval};
use crate::record;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReachabilityConfig {
    #[serde(with = "rational_text")]
    pub xi_star: BigRational,
    #[serde(with = "rational_text")]
    pub alpha: BigRational,
    pub k_max: u32,
    /// Bisection tolerance exponent: enclosures have width at most
    /// `2^tol_exp`, tightened further for small `x2`.
    pub tol_exp: i64,
    pub prec: u32,
}

impl Default for ReachabilityConfig {
    fn default() -> Self {
        let p = F2Params::default();
        ReachabilityConfig { xi_star: p.gstar.seq.limit(), alpha: p.alpha, k_max: 12, tol_exp: -32, prec: 64 }
    }
}

impl ReachabilityConfig {
    pub fn params(&self) -> F2Params {
        F2Params::new(GStarParams::new(SequenceSpec::standard_rational(self.xi_star.clone())), self.alpha.clone())
    }

    /// Tolerance and precision used at `x2 = ±2^-k`.
    pub fn budget(&self, k: u32) -> (Dyadic, u32) {
        let k = k as i64;
        let tol = Dyadic::pow2(self.tol_exp.min(-(2 * k + 8)));
        let prec = self.prec.max(3 * k as u32 + 24);
        (tol, prec)
    }
}

/// One row of the reachability table.
#[derive(Clone, Debug, PartialEq)]
pub struct ReachRow {
    pub k: u32,
    pub positive: bool,
    pub enclosure: Result<Interval, ArgminError>,
}

/// `g1_f2(±2^-k)` for `k = 1..=k_max`.
pub fn reachability_table(cfg: &ReachabilityConfig, params: &F2Params) -> Vec<ReachRow> {
    let rect = Rect::default_square();
    let mut rows = vec![];
    for positive in [true, false] {
        for k in 1..=cfg.k_max {
            let (tol, prec) = cfg.budget(k);
            let x2 = Dyadic::pow2(-(k as i64));
            let x2 = if positive { x2 } else { -x2 };
            rows.push(ReachRow { k, positive, enclosure: g1_f2(params, &x2, &rect, &tol, prec) });
        }
    }
    rows
}

pub fn exp_f2_reachability(cfg: &ReachabilityConfig) -> ExperimentReport {
    let params = cfg.params();
    let xi = &cfg.xi_star;
    let mut records = vec![];
    for row in reachability_table(cfg, &params) {
        let mut rec = record! {
            "k" => row.k,
            "side" => if row.positive { "+" } else { "-" },
        };
        match &row.enclosure {
            Ok(e) => {
                // distance to the reachable end: −ξ* − x above, x − ξ* below
                let (gap_lo, gap_hi) = if row.positive {
                    (-xi - e.hi().to_rational(), -xi - e.lo().to_rational())
                } else {
                    (e.lo().to_rational() - xi, e.hi().to_rational() - xi)
                };
                rec.insert("lo".into(), json!(e.lo().to_string()));
                rec.insert("hi".into(), json!(e.hi().to_string()));
                rec.insert("gap_lo".into(), json!(gap_lo.to_string()));
                rec.insert("gap_hi".into(), json!(gap_hi.to_string()));
                rec.insert("gap_approx".into(), json!(gap_lo.to_f64()));
                rec.insert("status".into(), json!("ok"));
            }
            Err(err) => {
                rec.insert("status".into(), json!("no_certified_sign"));
                rec.insert("error".into(), json!(err.to_string()));
            }
        }
        records.push(rec);
    }
    let (_, prec) = cfg.budget(cfg.k_max);
    let segment = m1_f2(&params, &Dyadic::from(0), &Rect::default_square(), &Dyadic::pow2(cfg.tol_exp), prec)
        .map(|s| s.hull())
        .map(|h| json!([h.lo().to_string(), h.hi().to_string()]))
        .unwrap_or(json!(null));
    let (mut summary, failures) = judge(&records, xi);
    summary.insert("minimizer_segment_at_x2_0".into(), segment);
    summary.insert("reached_points".into(), json!([format!("-{xi}"), xi.to_string()]));
    ExperimentReport::new("f2-reachability", json!(cfg), records, summary, failures)
}

fn rational_field(r: &Record, k: &str) -> Option<BigRational> {
    crate::realkit::parse_rational(r.get(k)?.as_str()?).ok()
}

/// Verdict from the records: every certified enclosure lies strictly
/// outside `[-ξ*, ξ*]` on the correct side, consecutive enclosures move
/// toward the segment without overlapping, and gaps shrink.
pub fn judge(records: &[Record], xi: &BigRational) -> (Record, Vec<String>) {
    let mut failures = vec![];
    let mut obstructions = 0;
    for side in ["+", "-"] {
        let rows: Vec<&Record> = records.iter().filter(|r| r.get("side") == Some(&json!(side))).collect();
        let mut prev: Option<(u64, BigRational, BigRational)> = None;
        for r in rows {
            let k = r.get("k").and_then(|v| v.as_u64()).unwrap_or(0);
            if r.get("status") != Some(&json!("ok")) {
                obstructions += 1;
                prev = None;
                continue;
            }
            let (Some(gap_lo), Some(gap_hi)) = (rational_field(r, "gap_lo"), rational_field(r, "gap_hi")) else {
                failures.push(format!("k={k} side {side}: unreadable record"));
                continue;
            };
            if gap_lo <= BigRational::from_integer(0.into()) {
                failures.push(format!("k={k} side {side}: enclosure not strictly outside the flat segment"));
            }
            if let Some((pk, p_lo, _p_hi)) = &prev {
                // strictly closer: this gap's upper bound below the previous lower bound
                if gap_hi >= *p_lo {
                    failures.push(format!("k={k} side {side}: not strictly closer than k={pk}"));
                }
            }
            prev = Some((k, gap_lo, gap_hi));
        }
    }
    let summary = record! {
        "xi_star" => xi.to_string(),
        "rows" => records.len(),
        "no_certified_sign" => obstructions,
    };
    (summary, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let cfg = ReachabilityConfig { k_max: 8, ..Default::default() };
        let rep = exp_f2_reachability(&cfg);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.records.len(), 16);
    }

    #[test]
    fn sides_mirror() {
        let cfg = ReachabilityConfig { k_max: 4, ..Default::default() };
        let rows = reachability_table(&cfg, &cfg.params());
        for k in 0..4 {
            let up = rows[k].enclosure.as_ref().unwrap();
            let down = rows[k + 4].enclosure.as_ref().unwrap();
            assert_eq!(up, &-down.clone());
        }
    }
}

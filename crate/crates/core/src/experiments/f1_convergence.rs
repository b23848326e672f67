//! Gauss-Seidel on `f1` from random starts: every run settles within two
//! sweeps on the segment `[-1, 1] × {0}` where `f1` vanishes.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{random_dyadic, ExperimentReport, Record};
use crate::argmin::AssignmentPolicy;
use crate::corpus::Rect;
use crate::descent::{gauss_seidel, F1Problem, Schedule, StopReason, StoppingPolicy, TraceValue};
use crate::realkit::Dyadic;
use crate::record;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct F1ConvergenceConfig {
    pub trials: usize,
    pub seed: u64,
    /// Fraction (in eighths) of starts placed exactly on `x2 = 0`.
    pub on_axis_eighths: u32,
}

impl Default for F1ConvergenceConfig {
    fn default() -> Self {
        F1ConvergenceConfig { trials: 1000, seed: 7, on_axis_eighths: 1 }
    }
}

fn case_of(x2: &Dyadic) -> &'static str {
    if x2.is_positive() {
        "I"
    } else if x2.is_negative() {
        "II"
    } else {
        "III"
    }
}

pub fn exp_f1_convergence(cfg: &F1ConvergenceConfig) -> ExperimentReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rect = Rect::default_square();
    let schedule = Schedule::coordinatewise(2);
    let stop = StoppingPolicy::fixed_point(16);
    let mut records = vec![];
    for trial in 0..cfg.trials.max(1) {
        let x1 = random_dyadic(&mut rng, 1);
        let x2 = if rng.gen_range(0..8) < cfg.on_axis_eighths { Dyadic::from(0) } else { random_dyadic(&mut rng, 1) };
        // the tie value: -1, 0, 1 or a random point of [-1, 1]
        let alpha = match trial % 4 {
            0 => Dyadic::from(-1),
            1 => Dyadic::from(0),
            2 => Dyadic::from(1),
            _ => random_dyadic(&mut rng, 0),
        };
        let problem = F1Problem::new(rect.clone(), AssignmentPolicy::Fixed(alpha.clone()));
        let mut rec = record! {
            "trial" => trial,
            "x1_0" => x1.to_string(),
            "x2_0" => x2.to_string(),
            "alpha" => alpha.to_string(),
            "case" => case_of(&x2),
        };
        match gauss_seidel(&problem, &schedule, Some(vec![x1, x2]), &stop) {
            Ok(t) => {
                let last = t.last();
                let value = match t.values.last() {
                    Some(TraceValue::Exact(v)) => v.to_string(),
                    _ => String::new(),
                };
                rec.insert("fixed_point".into(), json!(t.stop_reason == StopReason::FixedPoint));
                rec.insert("sweeps_to_converge".into(), json!(t.converged_at));
                rec.insert("x1_final".into(), json!(last[0].to_string()));
                rec.insert("x2_final".into(), json!(last[1].to_string()));
                rec.insert("value_final".into(), json!(value));
            }
            Err(e) => {
                rec.insert("fixed_point".into(), json!(false));
                rec.insert("error".into(), json!(e.to_string()));
            }
        }
        records.push(rec);
    }
    let (summary, failures) = judge(&records);
    ExperimentReport::new("f1-convergence", json!(cfg), records, summary, failures)
}

fn dyadic_field(r: &Record, k: &str) -> Option<Dyadic> {
    r.get(k)?.as_str()?.parse().ok()
}

/// Verdict from the records alone.
pub fn judge(records: &[Record]) -> (Record, Vec<String>) {
    let mut failures = vec![];
    let mut histogram = [0usize; 4];
    for r in records {
        let trial = r.get("trial").and_then(|v| v.as_u64()).unwrap_or(0);
        let sweeps = r.get("sweeps_to_converge").and_then(|v| v.as_u64());
        let Some(sweeps) = sweeps.filter(|_| r.get("fixed_point") == Some(&json!(true))) else {
            failures.push(format!("trial {trial}: no fixed point"));
            continue;
        };
        histogram[(sweeps as usize).min(3)] += 1;
        if sweeps > 2 {
            failures.push(format!("trial {trial}: {sweeps} sweeps"));
        }
        let x1 = dyadic_field(r, "x1_final");
        let x2 = dyadic_field(r, "x2_final");
        let v = dyadic_field(r, "value_final");
        let on_segment =
            matches!((&x1, &x2), (Some(a), Some(b)) if a.abs() <= Dyadic::from(1) && *b == Dyadic::from(0));
        if !on_segment || v != Some(Dyadic::from(0)) {
            failures.push(format!("trial {trial}: final point off the minimizer segment"));
        }
        let case = r.get("case").and_then(|v| v.as_str()).unwrap_or("");
        let alpha = dyadic_field(r, "alpha");
        let one_sweep = case == "III"
            || (case == "I" && alpha == Some(Dyadic::from(-1)))
            || (case == "II" && alpha == Some(Dyadic::from(1)));
        if one_sweep && sweeps > 1 {
            failures.push(format!("trial {trial}: case {case} needed {sweeps} sweeps"));
        }
    }
    let summary = record! {
        "trials" => records.len(),
        "converged_after_0" => histogram[0],
        "converged_after_1" => histogram[1],
        "converged_after_2" => histogram[2],
        "converged_later" => histogram[3],
    };
    (summary, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let cfg = F1ConvergenceConfig { trials: 64, seed: 3, on_axis_eighths: 2 };
        let a = exp_f1_convergence(&cfg);
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a.to_json(), exp_f1_convergence(&cfg).to_json());
    }

    #[test]
    fn judge_catches_a_slow_trial() {
        let bad = record! {
            "trial" => 0, "fixed_point" => true, "sweeps_to_converge" => 3,
            "x1_final" => "0", "x2_final" => "0", "value_final" => "0", "case" => "I", "alpha" => "0",
        };
        let (_, failures) = judge(&[bad]);
        assert_eq!(failures.len(), 1);
    }
}

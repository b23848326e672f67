//! Stopping rules that read `m` terms of `ξ_n` cannot tell the standard
//! sequence from a plateau that agrees on those terms, although the two
//! limits differ by `2^-(m+1)`.

use std::cell::Cell;

use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{ExperimentReport, Record};
use crate::corpus::SequenceSpec;
use crate::realkit::{stopping_index, Dyadic, Representation};
use crate::record;

/// Extra terms past the hidden index checked for strict decrease.
const MONOTONE_TAIL: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub index: u32,
}

/// Read access to a sequence limited to `budget` queries, each with index
/// at most `budget`.
pub struct CountingAccessor<'a> {
    seq: &'a SequenceSpec,
    budget: u32,
    used: Cell<u32>,
}

impl<'a> CountingAccessor<'a> {
    pub fn new(seq: &'a SequenceSpec, budget: u32) -> Self {
        CountingAccessor { seq, budget, used: Cell::new(0) }
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    pub fn queries(&self) -> u32 {
        self.used.get()
    }

    pub fn term(&self, n: u32) -> Result<Dyadic, BudgetExceeded> {
        if n == 0 || n > self.budget || self.used.get() >= self.budget {
            return Err(BudgetExceeded { index: n });
        }
        self.used.set(self.used.get() + 1);
        Ok(self.seq.term(n))
    }
}

/// A black-box rule that reads terms and reports an estimate of the limit.
pub struct StoppingRule {
    pub name: &'static str,
    pub run: fn(&CountingAccessor) -> Result<Dyadic, BudgetExceeded>,
}

fn contract_rule(acc: &CountingAccessor) -> Result<Dyadic, BudgetExceeded> {
    let rep = Representation::exact(Dyadic::from(0));
    acc.term(stopping_index(&rep, acc.budget()))
}

fn shifted_rule(acc: &CountingAccessor) -> Result<Dyadic, BudgetExceeded> {
    let m = acc.budget();
    Ok(acc.term(m)? - Dyadic::pow2(-(m as i64)))
}

fn midpoint_rule(acc: &CountingAccessor) -> Result<Dyadic, BudgetExceeded> {
    let m = acc.budget();
    Ok(acc.term(m)? - Dyadic::pow2(-(m as i64) - 1))
}

fn richardson_rule(acc: &CountingAccessor) -> Result<Dyadic, BudgetExceeded> {
    let m = acc.budget();
    if m < 2 {
        return shifted_rule(acc);
    }
    let a = acc.term(m - 1)?;
    let b = acc.term(m)?;
    Ok(b.mul_pow2(1) - a)
}

/// Rules run by the experiment; each respects the accessor budget.
pub fn registered_rules() -> Vec<StoppingRule> {
    vec![
        StoppingRule { name: "contract", run: contract_rule },
        StoppingRule { name: "shifted", run: shifted_rule },
        StoppingRule { name: "midpoint", run: midpoint_rule },
        StoppingRule { name: "richardson", run: richardson_rule },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryConfig {
    pub budgets: Vec<u32>,
    /// Trial 0 uses base `1/2`; later trials draw random bases in `[1/8, 5/8)`.
    pub trials: usize,
    pub seed: u64,
}

impl Default for AdversaryConfig {
    fn default() -> Self {
        AdversaryConfig { budgets: vec![1, 5, 10, 20], trials: 4, seed: 11 }
    }
}

/// The standard sequence and its plateau twin hidden after `m` terms.
pub fn twin_sequences(base: &Dyadic, m: u32) -> (SequenceSpec, SequenceSpec) {
    (SequenceSpec::standard(base.clone()), SequenceSpec::plateau(base.clone(), m))
}

pub fn exp_adversarial_stopping(cfg: &AdversaryConfig) -> ExperimentReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut records = vec![];
    for trial in 0..cfg.trials.max(1) {
        let base = if trial == 0 {
            Dyadic::frac(1, 1)
        } else {
            Dyadic::frac(1, 3) + Dyadic::new(rng.gen_range(0..(1i64 << 20)), -21)
        };
        for &m in &cfg.budgets {
            let (std_seq, plat_seq) = twin_sequences(&base, m);
            let same_prefix = (1..=m).all(|n| std_seq.term(n) == plat_seq.term(n));
            let decreasing = (1..m + MONOTONE_TAIL).all(|n| plat_seq.term(n + 1) < plat_seq.term(n));
            let (l_std, l_plat) = (std_seq.limit(), plat_seq.limit());
            let limit_gap = (&l_plat - &l_std).abs();
            for rule in registered_rules() {
                let a = CountingAccessor::new(&std_seq, m);
                let b = CountingAccessor::new(&plat_seq, m);
                let mut rec = record! {
                    "trial" => trial,
                    "base" => base.to_string(),
                    "m" => m,
                    "rule" => rule.name,
                    "same_prefix" => same_prefix,
                    "plateau_decreasing" => decreasing,
                    "limit_gap" => limit_gap.to_string(),
                };
                match ((rule.run)(&a), (rule.run)(&b)) {
                    (Ok(x), Ok(y)) => {
                        let err_std = (x.to_rational() - &l_std).abs();
                        let err_plat = (y.to_rational() - &l_plat).abs();
                        rec.insert("out_standard".into(), json!(x.to_string()));
                        rec.insert("out_plateau".into(), json!(y.to_string()));
                        rec.insert("queries".into(), json!(a.queries().max(b.queries())));
                        rec.insert("err_standard".into(), json!(err_std.to_string()));
                        rec.insert("err_plateau".into(), json!(err_plat.to_string()));
                    }
                    _ => {
                        rec.insert("error".into(), json!("budget exceeded"));
                    }
                }
                records.push(rec);
            }
        }
    }
    let (summary, failures) = judge(&records);
    ExperimentReport::new("stopping-adversary", json!(cfg), records, summary, failures)
}

fn rat(r: &Record, k: &str) -> Option<BigRational> {
    crate::realkit::parse_rational(r.get(k)?.as_str()?).ok()
}

/// Verdict: prefixes agree, limits are `2^-(m+1)` apart, every rule
/// answers identically on both sequences and so misses one of the two
/// limits by at least `2^-(m+2)`.
pub fn judge(records: &[Record]) -> (Record, Vec<String>) {
    let mut failures = vec![];
    for (i, r) in records.iter().enumerate() {
        let m = r.get("m").and_then(|v| v.as_u64()).unwrap_or(0) as i64;
        let tag = format!("row {i} (m={m}, rule {})", r.get("rule").and_then(|v| v.as_str()).unwrap_or("?"));
        if r.get("same_prefix") != Some(&json!(true)) {
            failures.push(format!("{tag}: prefixes differ"));
        }
        if r.get("plateau_decreasing") != Some(&json!(true)) {
            failures.push(format!("{tag}: plateau sequence not strictly decreasing"));
        }
        if rat(r, "limit_gap") != Some(Dyadic::pow2(-m - 1).to_rational()) {
            failures.push(format!("{tag}: limit gap is not 2^-(m+1)"));
        }
        if r.contains_key("error") || r.get("out_standard") != r.get("out_plateau") {
            failures.push(format!("{tag}: outputs differ or budget exceeded"));
            continue;
        }
        let worst = rat(r, "err_standard").max(rat(r, "err_plateau"));
        if worst < Some(Dyadic::pow2(-m - 2).to_rational()) {
            failures.push(format!("{tag}: both errors below 2^-(m+2)"));
        }
    }
    let mut gaps = serde_json::Map::new();
    for r in records {
        if let (Some(m), Some(g)) = (r.get("m"), r.get("limit_gap")) {
            gaps.insert(m.to_string(), g.clone());
        }
    }
    let summary = record! {
        "rows" => records.len(),
        "limit_gaps" => gaps,
        "rules" => registered_rules().iter().map(|r| r.name).collect::<Vec<_>>(),
    };
    (summary, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accessor_enforces_budget() {
        let s = SequenceSpec::standard(Dyadic::frac(1, 1));
        let acc = CountingAccessor::new(&s, 2);
        assert!(acc.term(3).is_err());
        assert!(acc.term(0).is_err());
        acc.term(1).unwrap();
        acc.term(2).unwrap();
        assert!(acc.term(1).is_err());
        assert_eq!(acc.queries(), 2);
    }

    #[test]
    fn default_run_passes() {
        let rep = exp_adversarial_stopping(&AdversaryConfig::default());
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn budget_ten_gap() {
        let (a, b) = twin_sequences(&Dyadic::frac(1, 1), 10);
        assert_eq!((b.limit() - a.limit()), Dyadic::pow2(-11).to_rational());
    }
}

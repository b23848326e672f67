//! Run configuration assembled from flags or a JSON file, validated before
//! anything runs.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use effopt::argmin::AssignmentPolicy;
use effopt::corpus::{rational_text, F2Params, GStarParams, Rect, SequenceSpec};
use effopt::descent::{Schedule, StoppingPolicy};
use effopt::realkit::{parse_rational, DEFAULT_PRECISION};
use effopt::Dyadic;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub fn dyadic(s: &str) -> Result<Dyadic> {
    s.trim().parse::<Dyadic>().map_err(|e| anyhow!("{e}"))
}

pub fn dyadic_list(s: &str) -> Result<Vec<Dyadic>> {
    s.split(',').map(dyadic).collect()
}

pub fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| anyhow!("{e}"))
}

/// `fixed:<dyadic>`, `left`, `right` or `mid`.
pub fn policy(s: &str) -> Result<AssignmentPolicy> {
    match s.trim() {
        "left" => Ok(AssignmentPolicy::LeftEnd),
        "right" => Ok(AssignmentPolicy::RightEnd),
        "mid" | "midpoint" => Ok(AssignmentPolicy::Midpoint),
        other => match other.strip_prefix("fixed:") {
            Some(v) => Ok(AssignmentPolicy::Fixed(dyadic(v)?)),
            None => bail!("unknown policy `{other}` (expected fixed:<value>, left, right or mid)"),
        },
    }
}

/// `0;1` style: blocks separated by `;`, coordinates by `,`.
pub fn schedule(s: &str, dim: usize) -> Result<Schedule> {
    let blocks = s
        .split(';')
        .map(|b| b.split(',').map(|i| i.trim().parse::<usize>().context("block index")).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Schedule::new(blocks, dim)?)
}

/// Function parameters shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamRecord {
    #[serde(with = "rational_text")]
    pub xi_star: BigRational,
    /// When set, a plateau sequence with base `xi_star` hidden after this index.
    pub plateau_hidden: Option<u32>,
    #[serde(with = "rational_text")]
    pub alpha: BigRational,
    pub truncation: u32,
    pub probe_budget: u32,
}

impl Default for ParamRecord {
    fn default() -> Self {
        let p = F2Params::default();
        ParamRecord {
            xi_star: p.gstar.seq.limit(),
            plateau_hidden: None,
            alpha: p.alpha,
            truncation: p.gstar.truncation,
            probe_budget: p.gstar.probe_budget,
        }
    }
}

impl ParamRecord {
    pub fn f2_params(&self) -> Result<F2Params> {
        let seq = match self.plateau_hidden {
            None => SequenceSpec::standard_rational(self.xi_star.clone()),
            Some(k) => {
                let base = Dyadic::from_rational(&self.xi_star)
                    .ok_or_else(|| anyhow!("a plateau base must be dyadic, got {}", self.xi_star))?;
                SequenceSpec::plateau(base, k)
            }
        };
        let mut g = GStarParams::new(seq);
        g.truncation = self.truncation;
        g.probe_budget = self.probe_budget;
        let p = F2Params::new(g, self.alpha.clone());
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub function: String,
    #[serde(default)]
    pub params: ParamRecord,
    /// Per-axis `(lower, upper)`; defaults to `[-2, 2]²`.
    pub rect: Option<Vec<(Dyadic, Dyadic)>>,
    pub schedule: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub policy: AssignmentPolicy,
    #[serde(default)]
    pub stopping: StoppingPolicy,
    pub start: Option<Vec<Dyadic>>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub prec: Option<u32>,
}

/// A configuration that passed validation.
pub struct Validated {
    pub config: RunConfig,
    pub params: F2Params,
    pub rect: Rect,
    pub schedule: Schedule,
    pub prec: u32,
}

impl RunConfig {
    pub fn validate(self) -> Result<Validated> {
        let dim = match self.function.as_str() {
            "f1" | "f2" => 2,
            "gstar" => bail!("gstar is one-dimensional; use `eval` for it"),
            other => bail!("unknown corpus function `{other}`"),
        };
        let params = self.params.f2_params()?;
        let rect = match &self.rect {
            Some(axes) => Rect::new(axes.clone())?,
            None => Rect::default_square(),
        };
        if rect.dim() != dim {
            bail!("rectangle has {} axes, {} needs {dim}", rect.dim(), self.function);
        }
        let schedule = match &self.schedule {
            Some(b) => Schedule::new(b.clone(), dim)?,
            None => Schedule::coordinatewise(dim),
        };
        if let Some(x) = &self.start {
            if !rect.contains(x) {
                bail!("start point lies outside the rectangle");
            }
        }
        if let AssignmentPolicy::Fixed(a) = &self.policy {
            // the tie segment of f1 is [-1, 1] clipped to the x1-range
            let lo = rect.lower(0).clone().max(Dyadic::from(-1));
            let hi = rect.upper(0).clone().min(Dyadic::from(1));
            if self.function == "f1" && (a < &lo || a > &hi) {
                bail!("policy value {a} lies outside the admissible segment [{lo}, {hi}]");
            }
        }
        let prec = self.prec.unwrap_or(DEFAULT_PRECISION);
        if prec == 0 {
            bail!("precision must be at least 1 bit");
        }
        Ok(Validated { params, rect, schedule, prec, config: self })
    }
}

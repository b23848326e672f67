mod config;
mod schema;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use effopt::corpus::{by_name, f1_eval};
use effopt::descent::{gauss_seidel, F1Problem, F2Problem, StopReason, StoppingPolicy};
use effopt::experiments::{
    exp_adversarial_stopping, exp_approx_gap, exp_f1_convergence, exp_f2_reachability, AdversaryConfig,
    ApproxGapConfig, ExperimentReport, F1ConvergenceConfig, ReachabilityConfig, NAMES,
};
use effopt::realkit::DEFAULT_PRECISION;
use effopt::{Dyadic, ExactTrace};

use config::{ParamRecord, RunConfig};

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERDICT_FAIL: u8 = 2;
const EXIT_NO_CERTIFIED_SIGN: u8 = 3;

#[derive(Parser)]
#[command(name = "effopt", version, about = "Exact coordinate descent and its counterexample corpus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a corpus function at a point.
    Eval(EvalArgs),
    /// Run Gauss-Seidel coordinate descent and print the trace as JSON.
    Optimize(OptimizeArgs),
    /// Run a scripted experiment and write its report.
    Experiment(ExperimentArgs),
    /// Print the JSON schema of traces or reports.
    Schema {
        #[arg(value_parser = ["trace", "report", "all"], default_value = "all")]
        which: String,
    },
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Limit of the defining sequence, e.g. 1/2 or 0.05.
    #[arg(long, allow_hyphen_values = true)]
    xi_star: Option<String>,
    /// Hide a plateau after this many terms.
    #[arg(long)]
    plateau_hidden: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Precision in bits for transcendental enclosures.
    #[arg(long, env = "EFFOPT_PREC")]
    prec: Option<u32>,
}

impl ParamArgs {
    fn apply(&self, p: &mut ParamRecord) -> Result<()> {
        if let Some(x) = &self.xi_star {
            p.xi_star = config::rational(x)?;
        }
        if let Some(a) = &self.alpha {
            p.alpha = config::rational(a)?;
        }
        if self.plateau_hidden.is_some() {
            p.plateau_hidden = self.plateau_hidden;
        }
        Ok(())
    }
}

#[derive(Args)]
struct EvalArgs {
    /// f1, gstar or f2.
    function: String,
    /// Comma-separated dyadic coordinates.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OptimizeArgs {
    /// f1 or f2; may be omitted with --config.
    function: Option<String>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// fixed:<value>, left, right or mid.
    #[arg(long)]
    policy: Option<String>,
    /// Stop after this many sweeps (or the cap for --target).
    #[arg(long)]
    max_sweeps: Option<usize>,
    /// Stop once within 2^-M of the limit.
    #[arg(long)]
    target: Option<u32>,
    /// Known limit point for --target.
    #[arg(long, allow_hyphen_values = true)]
    limit: Option<String>,
    /// Per-axis bounds, e.g. `-2,2;-2,2`.
    #[arg(long, allow_hyphen_values = true)]
    rect: Option<String>,
    /// Blocks of coordinates, e.g. `0;1`.
    #[arg(long)]
    schedule: Option<String>,
    /// Write the trace here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct ExperimentArgs {
    name: String,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    xi_star: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Lipschitz constants, comma-separated.
    #[arg(long = "L")]
    lipschitz: Option<String>,
    /// Offsets, comma-separated.
    #[arg(long)]
    delta: Option<String>,
    /// Half-width of the x1-range.
    #[arg(long)]
    a: Option<String>,
    /// Query budgets, comma-separated.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, env = "EFFOPT_PREC")]
    prec: Option<u32>,
    #[arg(long, default_value = "reports")]
    out_dir: PathBuf,
}

/// Failure carrying the exit code it maps to.
struct Exit(u8, anyhow::Error);

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit(EXIT_VALIDATION, e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a).map_err(Exit::from),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Schema { which } => cmd_schema(&which).map_err(Exit::from),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn cmd_eval(a: EvalArgs) -> Result<()> {
    let mut rec = ParamRecord::default();
    a.params.apply(&mut rec)?;
    let params = rec.f2_params()?;
    let x = config::dyadic_list(&a.at)?;
    let prec = a.params.prec.unwrap_or(DEFAULT_PRECISION);
    let f = by_name(&a.function, &params, Some(prec))?;
    if x.len() != f.dim() {
        bail!("{} takes {} coordinates, got {}", a.function, f.dim(), x.len());
    }
    if a.function == "f1" {
        let v = f1_eval(&x[0], &x[1]);
        return if a.json {
            emit(&serde_json::json!({ "function": "f1", "value": v, "exact": true }).to_string())
        } else {
            emit(&v.to_string())
        };
    }
    let v = f.eval(&x);
    if a.json {
        return emit(
            &serde_json::json!({ "function": a.function, "lo": v.lo(), "hi": v.hi(), "width": v.width() }).to_string(),
        );
    }
    if v.is_point() {
        emit(&format!("{} (exact)", v.lo()))
    } else {
        emit(&format!("[{}, {}] width {:e} (≈ {})", v.lo(), v.hi(), v.width().to_f64(), v.mid().to_f64()))
    }
}

fn run_config(a: &OptimizeArgs) -> Result<RunConfig> {
    let mut cfg: RunConfig = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => {
            let function = a.function.clone().ok_or_else(|| anyhow!("a function name or --config is required"))?;
            RunConfig {
                function,
                params: ParamRecord::default(),
                rect: None,
                schedule: None,
                policy: Default::default(),
                stopping: StoppingPolicy::default(),
                start: None,
                output: None,
                seed: None,
                prec: None,
            }
        }
    };
    if let Some(f) = &a.function {
        cfg.function = f.clone();
    }
    a.params.apply(&mut cfg.params)?;
    if let Some(p) = a.params.prec {
        cfg.prec = Some(p);
    }
    if let Some(s) = &a.start {
        cfg.start = Some(config::dyadic_list(s)?);
    }
    if let Some(p) = &a.policy {
        cfg.policy = config::policy(p)?;
    }
    if let Some(r) = &a.rect {
        let axes = r
            .split(';')
            .map(|ax| match config::dyadic_list(ax)?.as_slice() {
                [lo, hi] => Ok((lo.clone(), hi.clone())),
                _ => bail!("each rectangle axis needs `lo,hi`"),
            })
            .collect::<Result<Vec<_>>>()?;
        cfg.rect = Some(axes);
    }
    if let Some(s) = &a.schedule {
        cfg.schedule = Some(config::schedule(s, 2)?.blocks().to_vec());
    }
    let limit = a.limit.as_deref().map(config::dyadic_list).transpose()?;
    match (a.target, a.max_sweeps) {
        (Some(m), cap) => cfg.stopping = StoppingPolicy::target(m, limit, cap.unwrap_or(cfg.stopping.max_sweeps)),
        (None, Some(n)) => cfg.stopping = StoppingPolicy::max_iter(n),
        (None, None) => {}
    }
    if a.out.is_some() {
        cfg.output = a.out.clone();
    }
    Ok(cfg)
}

fn cmd_optimize(a: OptimizeArgs) -> Result<(), Exit> {
    let v = run_config(&a)?.validate()?;
    let cfg = &v.config;
    let trace: ExactTrace = match cfg.function.as_str() {
        "f1" => {
            let p = F1Problem::new(v.rect.clone(), cfg.policy.clone());
            gauss_seidel(&p, &v.schedule, cfg.start.clone(), &cfg.stopping).map_err(anyhow::Error::from)?
        }
        _ => {
            let mut p = F2Problem::new(v.params.clone(), v.rect.clone(), v.prec);
            p.policy = cfg.policy.clone();
            gauss_seidel(&p, &v.schedule, cfg.start.clone(), &cfg.stopping).map_err(anyhow::Error::from)?
        }
    };
    let json = serde_json::to_string_pretty(&trace).map_err(anyhow::Error::from)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, json + "\n")
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Exit(EXIT_VALIDATION, e))?,
        None => emit(&json)?,
    }
    if trace.stop_reason == StopReason::NoCertifiedSign {
        let why = trace.obstruction.clone().unwrap_or_else(|| "no certified derivative sign".into());
        return Err(Exit(EXIT_NO_CERTIFIED_SIGN, anyhow!("effectiveness obstruction: {why}")));
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> Result<(), Exit> {
    let mut report = build_report(&a)?;
    conclude(&mut report, &a.out_dir)
}

/// Writes the report files, echoes the verdict and maps it to an exit code.
fn conclude(report: &mut ExperimentReport, dir: &std::path::Path) -> Result<(), Exit> {
    report.write_to(dir).with_context(|| format!("writing reports to {}", dir.display()))?;
    emit(&format!("{}: {}", report.name, if report.passed() { "pass" } else { "fail" }))?;
    for k in ["threshold", "cells", "rows", "limit_gaps"] {
        if let Some(v) = report.summary.get(k) {
            emit(&format!("  {k}: {v}"))?;
        }
    }
    for path in &report.artifacts {
        emit(&format!("  wrote {path}"))?;
    }
    if report.passed() {
        Ok(())
    } else {
        for f in &report.failures {
            eprintln!("  {f}");
        }
        Err(Exit(EXIT_VERDICT_FAIL, anyhow!("verdict: fail ({} failing checks)", report.failures.len())))
    }
}

fn build_report(a: &ExperimentArgs) -> Result<ExperimentReport> {
    Ok(match a.name.as_str() {
        "f1-convergence" => {
            let mut c = F1ConvergenceConfig::default();
            if let Some(t) = a.trials {
                if t == 0 {
                    bail!("--trials must be at least 1");
                }
                c.trials = t;
            }
            if let Some(s) = a.seed {
                c.seed = s;
            }
            exp_f1_convergence(&c)
        }
        "f2-reachability" => {
            let mut c = ReachabilityConfig::default();
            if let Some(k) = a.k_max {
                if k < 2 {
                    bail!("--k-max must be at least 2");
                }
                c.k_max = k;
            }
            if let Some(x) = &a.xi_star {
                c.xi_star = config::rational(x)?;
            }
            if let Some(x) = &a.alpha {
                c.alpha = config::rational(x)?;
            }
            if let Some(p) = a.prec {
                c.prec = p;
            }
            c.params().validate()?;
            exp_f2_reachability(&c)
        }
        "approx-gap" => {
            let mut c = ApproxGapConfig::default();
            if let Some(l) = &a.lipschitz {
                c.lipschitz = config::dyadic_list(l)?;
            }
            if let Some(d) = &a.delta {
                c.deltas = config::dyadic_list(d)?;
            }
            if let Some(x) = &a.a {
                c.a = config::dyadic(x)?;
            }
            let zero = Dyadic::from(0);
            if c.lipschitz.is_empty() || c.deltas.is_empty() {
                bail!("--L and --delta need at least one value");
            }
            if c.lipschitz.iter().any(|l| l < &zero) || c.deltas.iter().any(|d| d <= &zero) || c.a <= zero {
                bail!("Lipschitz constants must be nonnegative, offsets and a positive");
            }
            exp_approx_gap(&c)
        }
        "stopping-adversary" => {
            let mut c = AdversaryConfig::default();
            if let Some(b) = &a.budget {
                c.budgets =
                    b.split(',').map(|s| s.trim().parse::<u32>().context("budget")).collect::<Result<Vec<_>>>()?;
                if c.budgets.contains(&0) {
                    bail!("budgets must be at least 1");
                }
            }
            if let Some(t) = a.trials {
                c.trials = t;
            }
            if let Some(s) = a.seed {
                c.seed = s;
            }
            exp_adversarial_stopping(&c)
        }
        other => bail!("unknown experiment `{other}` (expected one of {})", NAMES.join(", ")),
    })
}

fn cmd_schema(which: &str) -> Result<()> {
    let v = match which {
        "trace" => schema::trace(),
        "report" => schema::report(),
        _ => schema::all(),
    };
    emit(&serde_json::to_string_pretty(&v)?)
}

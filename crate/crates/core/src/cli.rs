//! Command-line front end.
//!
//! Exit codes: 0 success, 1 condition-check failure, 2 configuration
//! error, 3 I/O error. Every output is a deterministic function of the
//! configuration; the thread count never changes a byte.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{
    check_conditions, conditioning_bounds, normalize_observation, ConditionReport,
    ConditioningBounds,
};
use crate::config::{DemoSpec, RunConfig};
use crate::dimension::{dimension_experiment, CorrelationProfile};
use crate::harness::{
    conditioning_sweep, motivating_demo, observation_direction, DemoRow, SweepRecord,
};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONDITION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const THREADS_ENV: &str = "TAKENS_LAB_THREADS";

pub const SWEEP_HEADER: &str =
    "M,minQ,maxQ,C,delta0,deltaM,lower,upper,empirical_delta,conditions_ok";
pub const DIMENSION_HEADER: &str = "M,eps,corr_sum,local_grad";
pub const PLATEAU_HEADER: &str = "M,plateau_estimate,eps_low,eps_high,width";
pub const DEMO_HEADER: &str = "eps,M,Q";

const DEFAULT_CHECK_M: usize = 200;
const DEFAULT_CHECK_EPS: [f64; 2] = [0.1, 0.2];

#[derive(Debug, Parser)]
#[command(
    name = "takens-lab",
    version,
    about = "Conditioning of delay-coordinate maps for linear systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output path (stdout if absent and the config names none)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the configured master seed
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; falls back to TAKENS_LAB_THREADS
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the embedding hypotheses and closed-form constants
    Check,
    /// Monte Carlo conditioning sweep over M
    Sweep,
    /// Correlation-dimension estimate from a noisy series
    Dimension,
    /// Ill-conditioned circle example
    Demo {
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[arg(long = "m", value_delimiter = ',')]
        m: Option<Vec<usize>>,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_)
            | Error::InvalidArgument(_)
            | Error::Dimension(_)
            | Error::InvalidSystem(_)
            | Error::SymmetryViolation { .. } => EXIT_CONFIG,
            _ => EXIT_CONDITION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Diagnostics go to stderr; text reports and unredirected CSV go to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::config(format!("{THREADS_ENV}: not a thread count: {v:?}"))),
        Err(_) => Ok(None),
    }
}

pub fn execute(cli: &Cli, stdout: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(cli.common.threads)? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::config(format!("threads: {e}")))?;
    pool.install(|| dispatch(cli, stdout))
}

fn load_config(common: &Common) -> Result<Option<RunConfig>, CliError> {
    let Some(path) = &common.config else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut cfg = RunConfig::from_json(&text)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
        cfg.validate()?;
    }
    Ok(Some(cfg))
}

fn require_config(common: &Common) -> Result<RunConfig, CliError> {
    load_config(common)?.ok_or_else(|| CliError::config("--config is required for this command"))
}

fn output_path(common: &Common, cfg: Option<&RunConfig>) -> Option<PathBuf> {
    common
        .out
        .clone()
        .or_else(|| cfg.and_then(|c| c.output.as_ref().map(PathBuf::from)))
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn dispatch(cli: &Cli, stdout: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check => cmd_check(&cli.common, stdout),
        Command::Sweep => {
            let cfg = require_config(&cli.common)?;
            let records = conditioning_sweep(&cfg.sweep_config()?)?;
            emit(
                &sweep_csv(&records),
                output_path(&cli.common, Some(&cfg)).as_deref(),
                stdout,
            )?;
            Ok(EXIT_OK)
        }
        Command::Dimension => {
            let cfg = require_config(&cli.common)?;
            let sys = cfg.build_system()?;
            let h = cfg.dimension_observation(&sys)?;
            let (_, profiles) =
                dimension_experiment(&sys, &h, &cfg.alpha0(&sys)?, &cfg.dimension_config()?)?;
            emit(
                &dimension_csv(&profiles),
                output_path(&cli.common, Some(&cfg)).as_deref(),
                stdout,
            )?;
            Ok(EXIT_OK)
        }
        Command::Demo { theta, eps, m } => {
            let cfg = load_config(&cli.common)?;
            let base = cfg
                .as_ref()
                .and_then(|c| c.demo.clone())
                .unwrap_or_default();
            let spec = DemoSpec {
                theta: theta.unwrap_or(base.theta),
                eps: eps.clone().unwrap_or(base.eps),
                m: m.clone().unwrap_or(base.m),
            };
            let rows = motivating_demo(spec.theta, &spec.eps, &spec.m)?;
            emit(
                &demo_csv(&rows),
                output_path(&cli.common, cfg.as_ref()).as_deref(),
                stdout,
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_check(common: &Common, stdout: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let cfg = require_config(common)?;
    let sys = cfg.build_system()?;
    let (m, eps) = match &cfg.check {
        Some(c) => (
            c.m,
            if c.eps.is_empty() {
                DEFAULT_CHECK_EPS.to_vec()
            } else {
                c.eps.clone()
            },
        ),
        None => (DEFAULT_CHECK_M, DEFAULT_CHECK_EPS.to_vec()),
    };
    if m == 0 {
        return Err(CliError::config("check.M: must be at least 1"));
    }
    let direction = observation_direction(&sys, &cfg.observation(), cfg.seed)?;
    let h = normalize_observation(&direction, sys.d(), m)?;
    let report = check_conditions(&sys, &h, m);
    let bounds = conditioning_bounds(&sys, &h).ok();

    let text = check_text(&report, bounds.as_ref(), &eps);
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    if let Some(path) = output_path(common, Some(&cfg)) {
        emit(
            &check_json(&report, bounds.as_ref(), &eps),
            Some(&path),
            stdout,
        )?;
    }
    Ok(if report.injective_ok() && report.stable_ok() {
        EXIT_OK
    } else {
        EXIT_CONDITION
    })
}

fn eps_rows(cb: &ConditioningBounds, eps: &[f64]) -> Vec<(f64, Option<f64>, Option<u64>)> {
    eps.iter()
        .map(|&e| {
            (
                e,
                cb.required_measurements(e).ok(),
                cb.corollary_min_m(e).ok(),
            )
        })
        .collect()
}

pub fn check_text(
    report: &ConditionReport,
    cb: Option<&ConditioningBounds>,
    eps: &[f64],
) -> String {
    let mut s = String::new();
    match cb {
        Some(cb) => {
            let _ = writeln!(s, "kappa1      {}", cb.kappa1);
            let _ = writeln!(s, "kappa2      {}", cb.kappa2);
            let _ = writeln!(s, "A1          {}", cb.a1);
            let _ = writeln!(s, "A2          {}", cb.a2);
            let _ = writeln!(s, "nu          {}", cb.nu);
            let _ = writeln!(s, "C           {}", cb.c);
            let _ = writeln!(s, "delta0      {}", cb.delta0);
            let _ = writeln!(s, "M_threshold {}", cb.m_threshold);
            let (d1, d) = cb.delta_at(report.m);
            let _ = writeln!(s, "delta1(M={}) {}", report.m, d1);
            let _ = writeln!(s, "delta(M={})  {}", report.m, d);
            let _ = writeln!(s, "\neps,M_hat,corollary_M");
            for (e, mh, cor) in eps_rows(cb, eps) {
                let mh = mh.map(|v| v.to_string()).unwrap_or_default();
                let cor = cor.map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{e},{mh},{cor}");
            }
        }
        None => {
            let _ = writeln!(
                s,
                "closed-form constants undefined for this system and observation"
            );
        }
    }
    let _ = writeln!(s, "\ncondition checks at M = {}:", report.m);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "  [{status}] {:<26} {:?}: {}", c.name, c.scope, c.detail);
    }
    let _ = writeln!(
        s,
        "injective: {}  stable: {}",
        report.injective_ok(),
        report.stable_ok()
    );
    s
}

pub fn check_json(
    report: &ConditionReport,
    cb: Option<&ConditioningBounds>,
    eps: &[f64],
) -> String {
    let table: Vec<serde_json::Value> = cb
        .map(|cb| {
            eps_rows(cb, eps)
                .into_iter()
                .map(
                    |(e, mh, cor)| serde_json::json!({ "eps": e, "M_hat": mh, "corollary_M": cor }),
                )
                .collect()
        })
        .unwrap_or_default();
    let doc = serde_json::json!({
        "bounds": cb,
        "required_measurements": table,
        "report": report,
        "injective_ok": report.injective_ok(),
        "stable_ok": report.stable_ok(),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            r.m,
            r.min_q,
            r.max_q,
            r.c,
            r.delta0,
            r.delta_m,
            r.lower,
            r.upper,
            r.empirical_delta,
            r.conditions_ok
        );
    }
    s
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn dimension_csv(profiles: &[CorrelationProfile]) -> String {
    let mut s = String::from(DIMENSION_HEADER);
    s.push('\n');
    for p in profiles {
        for ((eps, c), g) in p.eps_grid.iter().zip(&p.corr_sum).zip(&p.local_grad) {
            let _ = writeln!(s, "{},{},{},{}", p.m, eps, c, opt(*g));
        }
    }
    s.push('\n');
    s.push_str(PLATEAU_HEADER);
    s.push('\n');
    for p in profiles {
        let pl = p.plateau;
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            p.m,
            opt(pl.map(|x| x.estimate)),
            opt(pl.map(|x| x.eps_low)),
            opt(pl.map(|x| x.eps_high)),
            opt(pl.map(|x| x.width))
        );
    }
    s
}

pub fn demo_csv(rows: &[DemoRow]) -> String {
    let mut s = String::from(DEMO_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.eps, r.m, r.q);
    }
    s
}

//! Command-line front end.
//!
//! Every command renders its complete output in memory before anything is
//! written, so error paths never leave partial output behind.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::interpolation::{minimize_l1, tau_star, DEFAULT_QUAD_TOL};
use crate::scalar::{alpha, heinz, heron, interpolator_f, PositivePair};
use crate::suite::{
    counterexample, run_matrix_suite, run_scalar_suite, MatrixSuiteConfig, ScalarSuiteConfig,
    VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest accepted deviation of a numeric argmin from the cubic root.
pub const ARGMIN_TOL: f64 = 2e-4;

#[derive(Debug, Parser)]
#[command(
    name = "heinz",
    version,
    about = "Heinz-mean interpolation and inequality verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomized scalar and/or matrix verification suites.
    Verify(VerifyArgs),
    /// Compute the optimal interpolation node and optionally confirm it
    /// numerically.
    TauStar(TauStarArgs),
    /// Reproduce the 2x2 instance refuting the strengthened AM-GM refinement.
    Counterexample(CounterexampleArgs),
    /// Tabulate H_t, F_tau(t) and K_alpha(t) on a uniform grid of [0, 1].
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteChoice {
    Scalar,
    Matrix,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteChoice,
    /// Trials per suite.
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
    /// Inclusive matrix dimension range.
    #[arg(long, default_value = "2:6", value_parser = parse_dims)]
    pub dims: (usize, usize),
    /// Relative tolerance for both suites [default: 1e-9 scalar, 1e-8 matrix].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TauStarArgs {
    /// Root-finding tolerance on |ell(tau)| and the bracket width.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Comma-separated values of b at which to minimize the L1 error.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub confirm_b: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
    pub quad_tol: f64,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long)]
    pub tau: f64,
    /// Number of grid intervals; the table has steps + 1 rows.
    #[arg(long)]
    pub steps: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|e| format!("invalid LO {lo:?}: {e}"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|e| format!("invalid HI {hi:?}: {e}"))?;
    Ok((lo, hi))
}

/// Rendered result of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn error(e: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let ok = !e.use_stderr();
            Output {
                code: if ok { EXIT_OK } else { EXIT_USAGE },
                stdout: if ok { text.clone() } else { String::new() },
                stderr: if ok { String::new() } else { text },
            }
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::TauStar(a) => tau_star_cmd(a),
        Command::Counterexample(a) => counterexample_cmd(a),
        Command::Sweep(a) => sweep(a),
    };
    result.unwrap_or_else(Output::error)
}

/// Sends `body` to `path` if given, else returns it as standard output.
fn deliver(body: String, path: Option<&PathBuf>, code: i32, stderr: String) -> Result<Output> {
    match path {
        Some(p) => {
            std::fs::write(p, body)
                .map_err(|e| Error::Usage(format!("cannot write {}: {e}", p.display())))?;
            Ok(Output {
                code,
                stdout: String::new(),
                stderr,
            })
        }
        None => Ok(Output {
            code,
            stdout: body,
            stderr,
        }),
    }
}

fn verify(args: &VerifyArgs) -> Result<Output> {
    if args.trials == 0 {
        return Err(Error::Usage("--trials must be at least 1".into()));
    }
    let mut parts = Vec::new();
    let mut summary = String::new();
    if matches!(args.suite, SuiteChoice::Scalar | SuiteChoice::All) {
        let mut cfg = ScalarSuiteConfig {
            trials: args.trials,
            seed: args.seed,
            ..ScalarSuiteConfig::default()
        };
        if let Some(tol) = args.tol {
            cfg.rel_tol = tol;
        }
        let start = Instant::now();
        let r = run_scalar_suite(&cfg)?;
        summarize(&mut summary, &r, start);
        parts.push(r);
    }
    if matches!(args.suite, SuiteChoice::Matrix | SuiteChoice::All) {
        let mut cfg = MatrixSuiteConfig {
            trials: args.trials,
            seed: args.seed,
            dims: args.dims,
            ..MatrixSuiteConfig::default()
        };
        if let Some(tol) = args.tol {
            cfg.rel_tol = tol;
        }
        let start = Instant::now();
        let r = run_matrix_suite(&cfg)?;
        summarize(&mut summary, &r, start);
        parts.push(r);
    }
    let report = if parts.len() == 1 {
        parts.remove(0)
    } else {
        VerificationReport::combine("all", parts)
    };
    let code = verdict(&report);
    let mut body = report.to_json();
    body.push('\n');
    deliver(body, args.json.as_ref(), code, summary)
}

fn verdict(report: &VerificationReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURES
    }
}

fn summarize(out: &mut String, r: &VerificationReport, start: Instant) {
    let _ = writeln!(
        out,
        "{}: {} evaluations, {} failures, elapsed_ms {}",
        r.suite,
        r.evaluations,
        r.failures_total,
        start.elapsed().as_millis()
    );
}

#[derive(serde::Serialize)]
struct Confirmation {
    b: f64,
    argmin: f64,
    deviation: f64,
    error_value: f64,
}

#[derive(serde::Serialize)]
struct TauStarReport {
    tau: f64,
    mirror: f64,
    residual: f64,
    confirmations: Vec<Confirmation>,
}

fn tau_star_cmd(args: &TauStarArgs) -> Result<Output> {
    let root = tau_star(args.tol)?;
    let mut confirmations = Vec::new();
    for &b in &args.confirm_b {
        let m = minimize_l1(b, args.quad_tol)?;
        confirmations.push(Confirmation {
            b,
            argmin: m.tau,
            deviation: (m.tau - root.tau).abs(),
            error_value: m.value,
        });
    }
    let ok = confirmations.iter().all(|c| c.deviation <= ARGMIN_TOL);
    let code = if ok { EXIT_OK } else { EXIT_FAILURES };

    let mut text = String::new();
    let _ = writeln!(text, "tau_star {:.6}", root.tau);
    let _ = writeln!(text, "one_minus_tau_star {:.6}", root.mirror);
    let _ = writeln!(text, "residual {:.3e}", root.residual);
    for c in &confirmations {
        let _ = writeln!(
            text,
            "b {} argmin {:.6} deviation {:.3e} {}",
            c.b,
            c.argmin,
            c.deviation,
            if c.deviation <= ARGMIN_TOL {
                "ok"
            } else {
                "EXCEEDS"
            }
        );
    }
    match &args.json {
        Some(path) => {
            let report = TauStarReport {
                tau: root.tau,
                mirror: root.mirror,
                residual: root.residual,
                confirmations,
            };
            let mut body = serde_json::to_string_pretty(&report).expect("serializable");
            body.push('\n');
            deliver(body, Some(path), code, String::new()).map(|mut o| {
                o.stdout = text;
                o
            })
        }
        None => Ok(Output {
            code,
            stdout: text,
            stderr: String::new(),
        }),
    }
}

fn counterexample_cmd(args: &CounterexampleArgs) -> Result<Output> {
    let c = counterexample()?;
    let code = if c.violated { EXIT_OK } else { EXIT_FAILURES };
    let mut text = String::new();
    let _ = writeln!(text, "A = diag({}, {})", c.a[0], c.a[1]);
    let _ = writeln!(text, "B = diag({}, {})", c.b[0], c.b[1]);
    let _ = writeln!(text, "X = I");
    let _ = writeln!(text, "norm = spectral");
    let _ = writeln!(text, "lhs = {:.7}", c.lhs);
    let _ = writeln!(text, "rhs = {}", c.rhs);
    let _ = writeln!(text, "{}", if c.violated { "VIOLATED" } else { "HOLDS" });
    match &args.json {
        Some(path) => {
            let mut body = serde_json::to_string_pretty(&c).expect("serializable");
            body.push('\n');
            deliver(body, Some(path), code, String::new()).map(|mut o| {
                o.stdout = text;
                o
            })
        }
        None => Ok(Output {
            code,
            stdout: text,
            stderr: String::new(),
        }),
    }
}

pub const SWEEP_HEADER: &str = "t,H,F_tau,K_alpha,sign";

/// CSV rows of `(t, H_t, F_tau(t), K_{alpha(t)}, sign(H - F_tau))` with
/// 17 significant digits.
pub fn sweep_csv(a: f64, b: f64, tau: f64, steps: usize) -> Result<String> {
    if steps == 0 {
        return Err(Error::Usage("--steps must be at least 1".into()));
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Usage(format!("--tau must lie in (0,1), got {tau}")));
    }
    let p = PositivePair::new(a, b)?;
    let mut out = String::with_capacity(64 * (steps + 2));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    let scale = 0.5 * (a + b);
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let h = heinz(&p, t)?;
        let f = interpolator_f(&p, tau, t)?;
        let k = heron(&p, alpha(t)?)?;
        let d = h - f;
        // Differences at rounding level count as a crossing.
        let sign = if d.abs() <= 1e-14 * scale {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        };
        let _ = writeln!(out, "{t:.16e},{h:.16e},{f:.16e},{k:.16e},{sign}");
    }
    Ok(out)
}

fn sweep(args: &SweepArgs) -> Result<Output> {
    let body = sweep_csv(args.a, args.b, args.tau, args.steps)?;
    deliver(body, args.csv.as_ref(), EXIT_OK, String::new())
}

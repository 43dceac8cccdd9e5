//! The `nilcoh` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::automorphism::orbit;
use crate::cocycle::{
    cocycle_identity_holds, pairing, param_count, sigma_eval, CocycleParams, ParamsFile,
};
use crate::extension::{
    check_projectivity, check_universal_relations, k_group_axioms, k_relation_battery,
    omega_cocycle_holds, verify_k2_is_g32, RelationReport, ReportKind,
};
use crate::group::GroupElement;
use crate::random;
use crate::scalars::IntegerMatrix;
use crate::simplicity::{is_simple, verify_certificate, SimplicityCertificate, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nilcoh",
    version,
    about = "Multipliers of free nilpotent groups of class 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide simplicity and print S(G(n)) with a witness.
    Simplicity {
        #[arg(long)]
        params: PathBuf,
        /// Emit the certificate as JSON.
        #[arg(long)]
        json: bool,
    },
    /// σ(r,s) as an element of R/Z.
    Eval {
        #[arg(long)]
        params: PathBuf,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// σ(r,s) − σ(s,r).
    Pairing {
        #[arg(long)]
        params: PathBuf,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// (n+1)n(n−1)/3, the number of free multiplier parameters.
    CohomologyDim { n: usize },
    /// Orbit of the parameters under a unimodular matrix, as JSON lines.
    AutOrbit {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Run a verification suite, or re-check a simplicity certificate.
    Verify {
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long, conflicts_with_all = ["suite", "params"])]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Relation battery and group axioms for K(n).
    Kgroup {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        sweep: Sweep,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cocycle,
    Relations,
    K2,
    All,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Sweep {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coordinates of random elements lie in [-bound, bound].
    #[arg(long, default_value_t = 5)]
    pub bound: i64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Invalid(PathBuf, crate::Error),
    Argument(String, crate::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            CliError::Json(p, e) => write!(f, "malformed JSON in {}: {e}", p.display()),
            CliError::Invalid(p, e) => write!(f, "invalid contents of {}: {e}", p.display()),
            CliError::Argument(a, e) => write!(f, "invalid argument `{a}`: {e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

fn load_params(path: &Path) -> CliResult<CocycleParams> {
    let file: ParamsFile = read_json(path)?;
    file.into_params()
        .map_err(|e| CliError::Invalid(path.to_path_buf(), e))
}

fn parse_element(n: usize, s: &str) -> CliResult<GroupElement> {
    GroupElement::parse_csv(n, s).map_err(|e| CliError::Argument(s.to_string(), e))
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

/// Runs a parsed command; output goes to `out`, diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn pass_code(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let io = |e: std::io::Error| CliError::Usage(format!("write failed: {e}"));
    match command {
        Command::Simplicity { params, json } => {
            let p = load_params(&params)?;
            let cert = is_simple(&p);
            if json {
                writeln!(out, "{}", to_json(&cert)).map_err(io)?;
            } else {
                write_simplicity_table(out, &cert).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Eval { params, r, s } => {
            let p = load_params(&params)?;
            let (r, s) = (parse_element(p.rank(), &r)?, parse_element(p.rank(), &s)?);
            let v = sigma_eval(&p, &r, &s).expect("ranks checked");
            writeln!(out, "{v}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Pairing { params, r, s } => {
            let p = load_params(&params)?;
            let (r, s) = (parse_element(p.rank(), &r)?, parse_element(p.rank(), &s)?);
            let v = pairing(&p, &r, &s).expect("ranks checked");
            writeln!(out, "{v}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::CohomologyDim { n } => {
            writeln!(out, "{}", param_count(n)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::AutOrbit {
            params,
            matrix,
            steps,
        } => {
            let p = load_params(&params)?;
            let a: IntegerMatrix = read_json(&matrix)?;
            let invalid = |e| CliError::Invalid(matrix.clone(), e);
            if a.rows() != p.rank() || a.cols() != p.rank() {
                return Err(invalid(crate::Error::Shape(format!(
                    "matrix is {}x{}, parameters have rank {}",
                    a.rows(),
                    a.cols(),
                    p.rank()
                ))));
            }
            for (step, q) in orbit(&a, &p, steps).map_err(invalid)?.iter().enumerate() {
                let line = json!({ "step": step, "params": ParamsFile::from_params(q) });
                writeln!(out, "{line}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            params,
            suite,
            certificate,
            sweep,
        } => {
            if let Some(path) = certificate {
                let cert: SimplicityCertificate = read_json(&path)?;
                let failures =
                    verify_certificate(&cert).map_err(|e| CliError::Invalid(path.clone(), e))?;
                let passed = failures.is_empty();
                let report =
                    json!({ "certificate": "simplicity", "passed": passed, "failures": failures });
                writeln!(out, "{}", to_json(&report)).map_err(io)?;
                return Ok(pass_code(passed));
            }
            let suite = suite
                .ok_or_else(|| CliError::Usage("verify needs --suite or --certificate".into()))?;
            let needs_params = suite != Suite::K2;
            let p = match (&params, needs_params) {
                (Some(path), _) => Some(load_params(path)?),
                (None, true) => return Err(CliError::Usage("this suite needs --params".into())),
                (None, false) => None,
            };
            writeln!(err, "seed: {}", sweep.seed).map_err(io)?;
            let reports = run_suite(suite, p.as_ref(), &sweep);
            let passed = reports.iter().all(|r| r.passed);
            let report = json!({
                "suite": format!("{suite:?}").to_lowercase(),
                "seed": sweep.seed,
                "bound": sweep.bound,
                "trials": sweep.trials,
                "passed": passed,
                "reports": reports,
            });
            writeln!(out, "{}", to_json(&report)).map_err(io)?;
            Ok(pass_code(passed))
        }
        Command::Kgroup { n, json, sweep } => {
            let battery =
                k_relation_battery(n).map_err(|e| CliError::Argument(n.to_string(), e))?;
            writeln!(err, "seed: {}", sweep.seed).map_err(io)?;
            let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
            let axioms = k_group_axioms(&mut rng, n, sweep.trials, sweep.bound);
            let reports = [battery, axioms];
            let passed = reports.iter().all(|r| r.passed);
            if json {
                let report =
                    json!({ "n": n, "seed": sweep.seed, "passed": passed, "reports": reports });
                writeln!(out, "{}", to_json(&report)).map_err(io)?;
            } else {
                for r in &reports {
                    write_report_table(out, r).map_err(io)?;
                }
            }
            Ok(pass_code(passed))
        }
    }
}

fn run_suite(suite: Suite, params: Option<&CocycleParams>, sweep: &Sweep) -> Vec<RelationReport> {
    let mut reports = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
    if matches!(suite, Suite::Cocycle | Suite::All) {
        reports.push(cocycle_sweep(
            params.expect("params loaded"),
            sweep,
            &mut rng,
        ));
    }
    if matches!(suite, Suite::Relations | Suite::All) {
        let p = params.expect("params loaded");
        let n = p.rank();
        let points: Vec<GroupElement> = (0..sweep.trials)
            .map(|_| random::element(&mut rng, n, sweep.bound))
            .collect();
        reports.push(check_universal_relations(p, &points).expect("ranks match"));
        let cases: Vec<_> = (0..sweep.trials)
            .map(|_| {
                (
                    random::element(&mut rng, n, sweep.bound),
                    random::element(&mut rng, n, sweep.bound),
                    random::element(&mut rng, n, sweep.bound),
                )
            })
            .collect();
        reports.push(check_projectivity(p, &cases).expect("ranks match"));
    }
    if matches!(suite, Suite::K2 | Suite::All) {
        reports.push(verify_k2_is_g32());
    }
    reports
}

fn cocycle_sweep(p: &CocycleParams, sweep: &Sweep, rng: &mut ChaCha8Rng) -> RelationReport {
    let n = p.rank();
    let mut report = RelationReport::new(
        format!("cocycle identities, n = {n}"),
        ReportKind::PropertySweep,
    );
    let (mut sigma_fail, mut omega_fail, mut norm_fail) = (None, None, None);
    let e = GroupElement::identity(n);
    for _ in 0..sweep.trials {
        let r = random::element(rng, n, sweep.bound);
        let s = random::element(rng, n, sweep.bound);
        let t = random::element(rng, n, sweep.bound);
        let case = || format!("r={r} s={s} t={t}");
        if sigma_fail.is_none() && !cocycle_identity_holds(p, &r, &s, &t).expect("ranks match") {
            sigma_fail = Some(case());
        }
        if omega_fail.is_none() && !omega_cocycle_holds(&r, &s, &t).expect("ranks match") {
            omega_fail = Some(case());
        }
        let normalized = sigma_eval(p, &r, &e).expect("rank").is_integral()
            && sigma_eval(p, &e, &r).expect("rank").is_integral();
        if norm_fail.is_none() && !normalized {
            norm_fail = Some(format!("r={r}"));
        }
    }
    for (name, fail) in [
        ("σ(r,s)σ(rs,t) = σ(r,st)σ(s,t)", sigma_fail),
        ("ω(r,s) + ω(rs,t) = ω(r,st) + ω(s,t)", omega_fail),
        ("σ(r,e) = σ(e,r) = 1", norm_fail),
    ] {
        let passed = fail.is_none();
        report.push(
            name,
            passed,
            fail.unwrap_or_else(|| format!("{} cases", sweep.trials)),
        );
    }
    report
}

fn write_simplicity_table(
    out: &mut dyn Write,
    cert: &SimplicityCertificate,
) -> std::io::Result<()> {
    let verdict = match cert.verdict {
        Verdict::Simple => "simple",
        Verdict::NotSimple => "not_simple",
    };
    writeln!(out, "verdict      {verdict}")?;
    writeln!(out, "center       {}", cert.center)?;
    writeln!(out, "center rank  {}", cert.center_rank)?;
    if cert.regular_basis.is_trivial() {
        writeln!(out, "S basis      (none)")?;
    }
    for (k, v) in cert.regular_basis.vectors().iter().enumerate() {
        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let label = if k == 0 { "S basis" } else { "" };
        writeln!(out, "{label:<12} ({})", v.join(","))?;
    }
    match &cert.witness {
        Some(w) => writeln!(out, "witness      {w}"),
        None => writeln!(out, "witness      none"),
    }
}

fn write_report_table(out: &mut dyn Write, r: &RelationReport) -> std::io::Result<()> {
    let kind = match r.kind {
        ReportKind::Theorem => "theorem",
        ReportKind::ConjectureCheck => "conjecture check",
        ReportKind::PropertySweep => "property sweep",
    };
    writeln!(out, "{} [{kind}]", r.title)?;
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "  {mark}  {:<44} {}", c.name, c.detail)?;
    }
    Ok(())
}

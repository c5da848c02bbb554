//! Command-line front end.
//!
//! Settings come from flags, optionally layered over a config file given with
//! `--config` (flat `key = value` lines, or a JSON object). Flags win over the
//! file. Exit codes: 0 success, 1 failed check, diverged solve or I/O error,
//! 2 configuration error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::basis::{eigenpairs, DiscreteDomain, GridFn};
use crate::error::Error;
use crate::extension::{
    best_trace_constant, dirichlet_energy, extremal_quotient, ExtensionField, ExtremalProfile,
};
use crate::nonlinear::{solve_with_basis, sweep, SolveConfig, SolveReport, SweepRow};
use crate::spectral::{apply_a_half, apply_b_half, apply_inv_laplacian, synthesize, v0_norm_sq, SpectralFn};
use crate::verification::{check_weak_mp_sample, solution_battery, stability_margin, CheckReport};

pub const THREADS_ENV: &str = "HALFLAP_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Eig,
    Apply,
    Solve,
    Sweep,
    Extend,
    Check,
    TraceConstant,
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Command as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApplyOp {
    AHalf,
    BHalf,
    InvLaplacian,
}

impl FromStr for ApplyOp {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <ApplyOp as ValueEnum>::from_str(s, true)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "halflap",
    version,
    about = "Square root of the Dirichlet Laplacian on intervals and rectangles"
)]
struct Args {
    /// eig | apply | solve | sweep | extend | check | trace-constant
    command: Option<Command>,
    /// Config file: `key = value` lines or a JSON object
    #[arg(long)]
    config: Option<PathBuf>,
    /// `interval:L:N` or `rectangle:L1:L2:N1:N2`
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Comma-separated exponents for `sweep`
    #[arg(long)]
    p_list: Option<String>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    tol_residual: Option<f64>,
    #[arg(long)]
    step_init: Option<f64>,
    #[arg(long)]
    backtrack_factor: Option<f64>,
    #[arg(long)]
    polish_iters: Option<usize>,
    #[arg(long)]
    grad_tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    perturbation: Option<f64>,
    /// Allow exponents at or within 5% of the critical one
    #[arg(long)]
    near_critical_override: bool,
    /// a-half | b-half | inv-laplacian
    #[arg(long)]
    op: Option<ApplyOp>,
    /// Comma-separated leading coefficients (zero-padded to --modes)
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Comma-separated extension heights
    #[arg(long)]
    heights: Option<String>,
    /// Dimension for `trace-constant`
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    resolution: Option<usize>,
    /// ‖c⁻‖∞ used by the stability-margin check
    #[arg(long)]
    c_minus: Option<f64>,
    /// Number of random inputs for the weak maximum principle check
    #[arg(long)]
    wmp_samples: Option<usize>,
    /// Write plot data (node coordinates and values) to this path
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub domain: Option<DiscreteDomain>,
    pub solve: SolveConfig,
    pub p_list: Vec<f64>,
    pub op: ApplyOp,
    pub coeffs: Option<Vec<f64>>,
    pub heights: Vec<f64>,
    pub n: usize,
    pub epsilon: f64,
    pub radius: f64,
    pub resolution: usize,
    pub c_minus: f64,
    pub wmp_samples: usize,
    pub plot: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Config(e.to_string())
    }
}

const KNOWN_KEYS: &[&str] = &[
    "command",
    "domain",
    "modes",
    "p",
    "p_list",
    "max_iter",
    "tol_residual",
    "step_init",
    "backtrack_factor",
    "polish_iters",
    "grad_tol",
    "seed",
    "perturbation",
    "near_critical_override",
    "op",
    "coeffs",
    "heights",
    "n",
    "epsilon",
    "radius",
    "resolution",
    "c_minus",
    "wmp_samples",
    "plot",
    "output",
    "format",
];

fn normalize_key(k: &str) -> String {
    k.trim().replace('-', "_")
}

/// Parses a config file into a flat key/value map.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON config: {e}"))?;
        let obj = value
            .as_object()
            .ok_or_else(|| "JSON config must be an object".to_string())?;
        for (k, v) in obj {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Array(items) => items
                    .iter()
                    .map(|i| match i {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(","),
                other => other.to_string(),
            };
            map.insert(normalize_key(k), s);
        }
    } else {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
            let v = v.trim().trim_matches('"');
            map.insert(normalize_key(k), v.to_string());
        }
    }
    if let Some(bad) = map.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(format!("unknown config key `{bad}`"));
    }
    Ok(map)
}

/// Parses `interval:L:N` or `rectangle:L1:L2:N1:N2`.
pub fn parse_domain(text: &str) -> Result<DiscreteDomain, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| format!("bad length `{s}` in `{text}`"));
    let count = |s: &str| s.parse::<usize>().map_err(|_| format!("bad grid count `{s}` in `{text}`"));
    let domain = match parts.as_slice() {
        ["interval", l, n] => DiscreteDomain::interval(num(l)?, count(n)?),
        ["rectangle", l1, l2, n1, n2] => {
            DiscreteDomain::rectangle(num(l1)?, num(l2)?, count(n1)?, count(n2)?)
        }
        _ => {
            return Err(format!(
                "domain must be `interval:L:N` or `rectangle:L1:L2:N1:N2`, got `{text}`"
            ))
        }
    };
    domain.map_err(|e| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("bad number `{t}` in list")))
        .collect()
}

fn pick<T: FromStr>(
    flag: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("invalid value `{raw}` for `{key}`"))),
    }
}

fn default_modes(domain: Option<&DiscreteDomain>) -> usize {
    match domain {
        Some(d) if d.dimension() == 1 => (d.grid_counts()[0] / 4).clamp(1, 64),
        Some(d) => 60.min(d.grid_counts().iter().copied().min().unwrap_or(8) - 1),
        None => 64,
    }
}

fn resolve(args: Args) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            parse_config_text(&text).map_err(CliError::Config)?
        }
        None => BTreeMap::new(),
    };

    let command = pick(args.command, &file, "command")?
        .ok_or_else(|| CliError::Config("no command given".into()))?;
    let domain = pick(args.domain, &file, "domain")?
        .map(|s| parse_domain(&s))
        .transpose()
        .map_err(CliError::Config)?;

    let defaults = SolveConfig::default();
    let modes = pick(args.modes, &file, "modes")?.unwrap_or_else(|| default_modes(domain.as_ref()));
    let near_critical_override = args.near_critical_override
        || pick::<bool>(None, &file, "near_critical_override")?.unwrap_or(false);
    let solve = SolveConfig {
        p: pick(args.p, &file, "p")?.unwrap_or(defaults.p),
        modes,
        max_iter: pick(args.max_iter, &file, "max_iter")?.unwrap_or(defaults.max_iter),
        tol_residual: pick(args.tol_residual, &file, "tol_residual")?
            .unwrap_or(defaults.tol_residual),
        step_init: pick(args.step_init, &file, "step_init")?,
        backtrack_factor: pick(args.backtrack_factor, &file, "backtrack_factor")?
            .unwrap_or(defaults.backtrack_factor),
        polish_iters: pick(args.polish_iters, &file, "polish_iters")?
            .unwrap_or(defaults.polish_iters),
        grad_tol: pick(args.grad_tol, &file, "grad_tol")?.unwrap_or(defaults.grad_tol),
        rng_seed: pick(args.seed, &file, "seed")?.unwrap_or(defaults.rng_seed),
        perturbation: pick(args.perturbation, &file, "perturbation")?
            .unwrap_or(defaults.perturbation),
        near_critical_override,
    };

    let list = |flag: Option<String>, key: &str| -> Result<Option<Vec<f64>>, CliError> {
        pick(flag, &file, key)?
            .map(|s| parse_list(&s))
            .transpose()
            .map_err(CliError::Config)
    };
    let p_list = list(args.p_list, "p_list")?.unwrap_or_default();
    let coeffs = list(args.coeffs, "coeffs")?;
    let heights = list(args.heights, "heights")?.unwrap_or_else(|| vec![0.0]);

    let default_format = match command {
        Command::Solve => Format::Json,
        _ => Format::Csv,
    };
    Ok(RunConfig {
        command,
        domain,
        solve,
        p_list,
        op: pick(args.op, &file, "op")?.unwrap_or(ApplyOp::AHalf),
        coeffs,
        heights,
        n: pick(args.n, &file, "n")?.unwrap_or(2),
        epsilon: pick(args.epsilon, &file, "epsilon")?.unwrap_or(1.0),
        radius: pick(args.radius, &file, "radius")?.unwrap_or(200.0),
        resolution: pick(args.resolution, &file, "resolution")?.unwrap_or(4096),
        c_minus: pick(args.c_minus, &file, "c_minus")?.unwrap_or(1.0),
        wmp_samples: pick(args.wmp_samples, &file, "wmp_samples")?.unwrap_or(20),
        plot: pick(args.plot, &file, "plot")?,
        output: pick(args.output, &file, "output")?,
        format: pick(args.format, &file, "format")?.unwrap_or(default_format),
    })
}

/// Writes node coordinates and values as CSV: `x,u` in 1D, `x1,x2,u` in 2D.
pub fn emit_plot_data(u: &GridFn, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, plot_csv(u))
}

fn plot_csv(u: &GridFn) -> String {
    let domain = u.domain();
    let dim = domain.dimension();
    let mut s = String::from(if dim == 1 { "x,u\n" } else { "x1,x2,u\n" });
    for (i, v) in u.values().iter().enumerate() {
        let x = domain.node_coordinates(i);
        if dim == 1 {
            let _ = writeln!(s, "{},{}", x[0], v);
        } else {
            let _ = writeln!(s, "{},{},{}", x[0], x[1], v);
        }
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Io(e.to_string()))
}

/// Float wrapper serialized with 17 significant digits.
struct Sig(f64);

impl Serialize for Sig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::serial::f64_sig17(&self.0, s)
    }
}

fn sigs(xs: &[f64]) -> Vec<Sig> {
    xs.iter().map(|x| Sig(*x)).collect()
}

struct Outcome {
    text: String,
    success: bool,
    plot: Option<GridFn>,
}

fn require_domain(cfg: &RunConfig) -> Result<DiscreteDomain, CliError> {
    cfg.domain
        .ok_or_else(|| CliError::Config("this command needs --domain".into()))
}

fn require_coeffs(cfg: &RunConfig) -> Result<&[f64], CliError> {
    cfg.coeffs
        .as_deref()
        .ok_or_else(|| CliError::Config("this command needs --coeffs".into()))
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Eig => cmd_eig(cfg),
        Command::Apply => cmd_apply(cfg),
        Command::Solve => cmd_solve(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Extend => cmd_extend(cfg),
        Command::Check => cmd_check(cfg),
        Command::TraceConstant => cmd_trace_constant(cfg),
    }
}

fn cmd_eig(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = require_domain(cfg)?;
    let basis = eigenpairs(&domain, cfg.solve.modes)?;
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("k,lambda\n");
            for (k, l) in basis.lambdas().iter().enumerate() {
                let _ = writeln!(s, "{},{}", k + 1, l);
            }
            s
        }
        Format::Json => {
            let indices: Vec<&[usize]> = basis
                .indices()
                .iter()
                .map(|i| &i[..domain.dimension()])
                .collect();
            to_json(&json!({
                "domain": domain,
                "lambdas": serde_json::to_value(sigs(basis.lambdas())).unwrap(),
                "indices": indices,
            }))?
        }
    };
    Ok(Outcome { text, success: true, plot: None })
}

fn cmd_apply(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = require_domain(cfg)?;
    let basis = Arc::new(eigenpairs(&domain, cfg.solve.modes)?);
    let input = SpectralFn::from_prefix(basis, require_coeffs(cfg)?)?;
    let output = match cfg.op {
        ApplyOp::AHalf => apply_a_half(&input),
        ApplyOp::BHalf => apply_b_half(&input),
        ApplyOp::InvLaplacian => apply_inv_laplacian(&input),
    };
    let op_name = cfg.op.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("k,input,output\n");
            for (k, (a, b)) in input.coeffs().iter().zip(output.coeffs()).enumerate() {
                let _ = writeln!(s, "{},{},{}", k + 1, a, b);
            }
            s
        }
        Format::Json => to_json(&json!({
            "op": op_name,
            "input": serde_json::to_value(&input).unwrap(),
            "output": serde_json::to_value(&output).unwrap(),
            "v0_norm_sq": serde_json::to_value(Sig(v0_norm_sq(&input))).unwrap(),
        }))?,
    };
    Ok(Outcome { text, success: true, plot: Some(synthesize(&output)) })
}

fn solve_report(cfg: &RunConfig) -> Result<SolveReport, CliError> {
    let domain = require_domain(cfg)?;
    let basis = Arc::new(eigenpairs(&domain, cfg.solve.modes)?);
    cfg.solve.validate(&basis)?;
    Ok(solve_with_basis(&basis, &cfg.solve)?)
}

const SOLVE_CSV_HEADER: &str = "p,modes,converged,i0,multiplier,residual_inf,pointwise_defect,\
sup_norm,positivity_min,symmetry_defect,iterations\n";

fn cmd_solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = solve_report(cfg)?;
    let text = match cfg.format {
        Format::Json => to_json(&report)?,
        Format::Csv => format!(
            "{SOLVE_CSV_HEADER}{},{},{},{},{},{},{},{},{},{},{}\n",
            report.p,
            report.modes,
            report.converged,
            report.i0,
            report.multiplier,
            report.residual_inf,
            report.pointwise_defect,
            report.sup_norm,
            report.positivity_min,
            report.symmetry_defect,
            report.iterations
        ),
    };
    Ok(Outcome {
        text,
        success: report.converged,
        plot: Some(report.grid),
    })
}

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
    }
}

fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = require_domain(cfg)?;
    // modes/grid validity is global; per-exponent problems are flagged per row
    eigenpairs(&domain, cfg.solve.modes)?;
    let rows: Vec<SweepRow> = sweep(&domain, &cfg.p_list, &cfg.solve, threads_from_env()?)?;
    let text = match cfg.format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("p,sup_norm,residual,converged\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.p, r.sup_norm, r.residual, r.converged);
            }
            s
        }
    };
    Ok(Outcome {
        text,
        success: rows.iter().all(|r| r.converged),
        plot: None,
    })
}

fn cmd_extend(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = require_domain(cfg)?;
    let basis = Arc::new(eigenpairs(&domain, cfg.solve.modes)?);
    let trace = SpectralFn::from_prefix(basis, require_coeffs(cfg)?)?;
    let field = ExtensionField::new(trace.clone());
    let mut slices = Vec::with_capacity(cfg.heights.len());
    for &y in &cfg.heights {
        slices.push((y, field.slice(y)?));
    }
    let energy = dirichlet_energy(&trace);
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("y,sup_abs\n");
            for (y, v) in &slices {
                let _ = writeln!(s, "{},{}", y, v.sup_abs());
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = slices
                .iter()
                .map(|(y, v)| json!({"y": Sig(*y), "sup_abs": Sig(v.sup_abs())}))
                .collect();
            to_json(&json!({
                "dirichlet_energy": Sig(energy),
                "slices": rows,
            }))?
        }
    };
    Ok(Outcome {
        text,
        success: true,
        plot: slices.into_iter().next().map(|(_, v)| v),
    })
}

fn cmd_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = require_domain(cfg)?;
    let report = solve_report(cfg)?;
    let basis = report.solution.basis().clone();
    let mut checks = vec![CheckReport {
        name: "solve_converged".into(),
        passed: report.converged,
        metric: report.residual_inf,
        tolerance: cfg.solve.tol_residual,
        detail: format!("{} iterations", report.iterations),
    }];
    checks.push(check_weak_mp_sample(&basis, cfg.wmp_samples, cfg.solve.rng_seed)?);
    checks.extend(solution_battery(&report.grid));
    checks.push(stability_margin(&domain, cfg.c_minus)?);

    let text = match cfg.format {
        Format::Json => to_json(&json!({
            "i0": Sig(report.i0),
            "sup_norm": Sig(report.sup_norm),
            "checks": checks,
        }))?,
        Format::Csv => {
            let mut s = String::from("name,passed,metric,tolerance,detail\n");
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    c.name,
                    c.passed,
                    c.metric,
                    c.tolerance,
                    csv_field(&c.detail)
                );
            }
            s
        }
    };
    Ok(Outcome {
        text,
        success: checks.iter().all(|c| c.passed),
        plot: Some(report.grid),
    })
}

fn cmd_trace_constant(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let best = best_trace_constant(cfg.n)?;
    let quotient = if cfg.n == 2 {
        let profile = ExtremalProfile::centered(2, cfg.epsilon)?;
        Some(extremal_quotient(&profile, cfg.radius, cfg.resolution)?)
    } else {
        None
    };
    let text = match cfg.format {
        Format::Csv => {
            let q = quotient.map(|q| q.to_string()).unwrap_or_default();
            format!(
                "n,best_constant,extremal_quotient,epsilon,radius,resolution\n{},{},{},{},{},{}\n",
                cfg.n, best, q, cfg.epsilon, cfg.radius, cfg.resolution
            )
        }
        Format::Json => to_json(&json!({
            "n": cfg.n,
            "best_constant": Sig(best),
            "extremal_quotient": quotient.map(Sig),
            "epsilon": Sig(cfg.epsilon),
            "radius": Sig(cfg.radius),
            "resolution": cfg.resolution,
        }))?,
    };
    Ok(Outcome { text, success: true, plot: None })
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Reports go to `out` (or `--output`), diagnostics to
/// `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = resolve(args).and_then(|cfg| dispatch(&cfg).map(|o| (cfg, o)));
    let (cfg, outcome) = match result {
        Ok(v) => v,
        Err(CliError::Config(msg)) => {
            let _ = writeln!(err, "configuration error: {msg}");
            return 2;
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "i/o error: {msg}");
            return 1;
        }
    };

    if let (Some(path), Some(grid)) = (&cfg.plot, &outcome.plot) {
        if let Err(e) = emit_plot_data(grid, path) {
            let _ = writeln!(err, "cannot write plot data to {}: {e}", path.display());
            return 1;
        }
    }
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => out.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "cannot write report: {e}");
        return 1;
    }
    if outcome.success {
        0
    } else {
        let _ = writeln!(err, "run finished with a failed check or a diverged solve");
        1
    }
}

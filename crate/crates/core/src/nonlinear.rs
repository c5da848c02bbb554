//! Positive solutions of `A^(1/2) u = u^p` with zero Dirichlet data.
//!
//! The solver minimizes the extension energy `sum_k b_k^2 sqrt(λ_k)` over
//! traces with `∫|w|^(p+1) = 1` by projected gradient descent. Pairing the
//! Euler-Lagrange equation `A^(1/2) w = μ w^p` with `w` gives `μ = I0`, so
//! `u = I0^(1/(p-1)) w` solves the unconstrained problem. A stabilized
//! fixed-point iteration then drives the Galerkin residual to tolerance.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{eigenpairs, reflect, DiscreteDomain, EigenBasis, GridFn};
use crate::error::{Error, Result};
use crate::serial;
use crate::spectral::{analyze_values, synthesize, v0_norm_sq, SpectralFn};

/// Exponents below this are rejected: `1/(p-1)` blows up as `p -> 1`.
pub const MIN_EXPONENT: f64 = 1.1;

/// Exponents within this fraction of the critical one need an override.
pub const NEAR_CRITICAL_FRACTION: f64 = 0.95;

/// Critical trace exponent `(n+1)/(n-1)`; infinite for `n = 1`.
pub fn critical_exponent(n: usize) -> Result<f64> {
    match n {
        0 => Err(Error::InvalidArgument("dimension must be at least 1".into())),
        1 => Ok(f64::INFINITY),
        _ => Ok((n as f64 + 1.0) / (n as f64 - 1.0)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub p: f64,
    /// Number of eigenmodes `K`.
    pub modes: usize,
    /// Iteration cap of the constrained minimization.
    pub max_iter: usize,
    pub tol_residual: f64,
    /// Initial step of every line search; `None` means `0.5 / sqrt(λ_K)`.
    pub step_init: Option<f64>,
    pub backtrack_factor: f64,
    /// Iteration cap of the fixed-point polish.
    pub polish_iters: usize,
    /// Minimization stops once the tangent gradient falls below this
    /// fraction of the energy gradient.
    pub grad_tol: f64,
    pub rng_seed: u64,
    /// Amplitude of the seeded random perturbation of the initial guess.
    pub perturbation: f64,
    pub near_critical_override: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            p: 2.0,
            modes: 64,
            max_iter: 20_000,
            tol_residual: 1e-10,
            step_init: None,
            backtrack_factor: 0.5,
            polish_iters: 500,
            grad_tol: 1e-6,
            rng_seed: 0,
            perturbation: 0.0,
            near_critical_override: false,
        }
    }
}

impl SolveConfig {
    /// Checks the configuration against a domain and the basis built for it.
    pub fn validate(&self, basis: &EigenBasis) -> Result<()> {
        let reject = |msg: String| Err(Error::RejectedConfig(msg));
        let p = self.p;
        if !p.is_finite() || p < MIN_EXPONENT {
            return reject(format!("exponent p = {p} is below the floor {MIN_EXPONENT}"));
        }
        let domain = basis.domain();
        let critical = critical_exponent(domain.dimension())?;
        if !self.near_critical_override {
            if p >= critical {
                return reject(format!(
                    "p = {p} is not subcritical (critical exponent {critical})"
                ));
            }
            if p >= NEAR_CRITICAL_FRACTION * critical {
                return reject(format!(
                    "p = {p} is within 5% of the critical exponent {critical}; \
                     set the near-critical override to run it"
                ));
            }
        }
        if !(self.tol_residual.is_finite() && self.tol_residual > 0.0) {
            return reject(format!("tol_residual must be positive, got {}", self.tol_residual));
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return reject(format!(
                "backtrack_factor must lie in (0, 1), got {}",
                self.backtrack_factor
            ));
        }
        if let Some(step) = self.step_init {
            if !(step.is_finite() && step > 0.0) {
                return reject(format!("step_init must be positive, got {step}"));
            }
        }
        if !(self.grad_tol.is_finite() && self.grad_tol > 0.0) {
            return reject(format!("grad_tol must be positive, got {}", self.grad_tol));
        }
        if !(self.perturbation.is_finite() && self.perturbation >= 0.0) {
            return reject(format!(
                "perturbation must be nonnegative, got {}",
                self.perturbation
            ));
        }
        if self.max_iter == 0 {
            return reject("max_iter must be at least 1".into());
        }
        if basis.len() != self.modes {
            return reject(format!(
                "basis has {} modes but {} were configured",
                basis.len(),
                self.modes
            ));
        }
        for axis in 0..domain.dimension() {
            let needed = 4 * basis.max_axis_index(axis);
            if domain.grid_counts()[axis] < needed {
                return reject(format!(
                    "grid count {} on axis {axis} is below the dealiasing margin {needed} \
                     (4 x highest mode index)",
                    domain.grid_counts()[axis]
                ));
            }
        }
        Ok(())
    }

    fn step(&self, basis: &EigenBasis) -> f64 {
        self.step_init
            .unwrap_or_else(|| 0.5 / basis.sqrt_lambdas()[basis.len() - 1])
    }
}

/// Outcome of the constrained minimization.
#[derive(Debug, Clone)]
pub struct Minimization {
    pub minimizer: SpectralFn,
    pub i0: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Energy of the initial guess followed by every accepted iterate.
    pub energy_trace: Vec<f64>,
    /// Largest `|∫|w|^(p+1) - 1|` seen over the accepted iterates.
    pub max_constraint_defect: f64,
}

fn energy(basis: &EigenBasis, b: &[f64]) -> f64 {
    b.iter()
        .zip(basis.sqrt_lambdas())
        .map(|(c, s)| c * c * s)
        .sum()
}

/// `∫|u|^(p+1)` by nodal quadrature.
fn trace_power(u: &GridFn, p: f64) -> f64 {
    u.values().iter().map(|v| v.abs().powf(p + 1.0)).sum::<f64>()
        * u.domain().quadrature_weight()
}

/// Applies the pointwise absolute value (only if something is negative) and
/// rescales onto the constraint sphere.
fn make_admissible(f: SpectralFn, p: f64) -> Result<SpectralFn> {
    let u = synthesize(&f);
    let f = if u.values().iter().any(|v| *v < 0.0) {
        let abs: Vec<f64> = u.values().iter().map(|v| v.abs()).collect();
        analyze_values(&abs, f.basis())
    } else {
        f
    };
    let g = trace_power(&synthesize(&f), p);
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::Precondition(
            "iterate vanished on the grid; cannot normalize".into(),
        ));
    }
    Ok(f.scaled(g.powf(-1.0 / (p + 1.0))))
}

fn initial_guess(basis: &Arc<EigenBasis>, cfg: &SolveConfig) -> SpectralFn {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let coeffs = (0..basis.len())
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                let r: f64 = rng.gen_range(-1.0..1.0);
                cfg.perturbation * r / (k + 1) as f64
            }
        })
        .collect();
    SpectralFn::from_raw(basis.clone(), coeffs)
}

/// Minimizes the extension energy over the unit `L^(p+1)` sphere of
/// nonnegative traces.
pub fn minimize_i0(basis: &Arc<EigenBasis>, cfg: &SolveConfig) -> Result<Minimization> {
    cfg.validate(basis)?;
    let p = cfg.p;
    let s = basis.sqrt_lambdas();
    let step_init = cfg.step(basis);

    let mut w = make_admissible(initial_guess(basis, cfg), p)?;
    let mut e = energy(basis, w.coeffs());
    let mut trace = vec![e];
    let mut max_defect = (trace_power(&synthesize(&w), p) - 1.0).abs();
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iter {
        let u = synthesize(&w);
        let grad_e: Vec<f64> = w.coeffs().iter().zip(s).map(|(b, sk)| 2.0 * sk * b).collect();
        let dual: Vec<f64> = u
            .values()
            .iter()
            .map(|v| (p + 1.0) * v.abs().powf(p - 1.0) * v)
            .collect();
        let grad_g = analyze_values(&dual, basis).into_coeffs();
        let gg: f64 = grad_g.iter().map(|x| x * x).sum();
        let eg: f64 = grad_e.iter().zip(&grad_g).map(|(a, b)| a * b).sum();
        let tangent: Vec<f64> = grad_e
            .iter()
            .zip(&grad_g)
            .map(|(a, b)| a - eg / gg * b)
            .collect();
        let norm_t = tangent.iter().map(|x| x * x).sum::<f64>().sqrt();
        let norm_e = grad_e.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm_t <= cfg.grad_tol * norm_e {
            converged = true;
            break;
        }

        let mut tau = step_init;
        let mut accepted = None;
        while tau >= step_init * 1e-14 {
            let trial = SpectralFn::from_raw(
                basis.clone(),
                w.coeffs()
                    .iter()
                    .zip(&tangent)
                    .map(|(b, t)| b - tau * t)
                    .collect(),
            );
            let trial = make_admissible(trial, p)?;
            let et = energy(basis, trial.coeffs());
            if et <= e {
                accepted = Some((trial, et));
                break;
            }
            tau *= cfg.backtrack_factor;
        }
        let Some((next, en)) = accepted else {
            // no descent left at working precision
            break;
        };
        iterations += 1;
        max_defect = max_defect.max((trace_power(&synthesize(&next), p) - 1.0).abs());
        w = next;
        e = en;
        trace.push(e);
    }

    Ok(Minimization {
        i0: v0_norm_sq(&w),
        minimizer: w,
        iterations,
        converged,
        energy_trace: trace,
        max_constraint_defect: max_defect,
    })
}

/// `u = I0^(1/(p-1)) w`, turning a constrained minimizer into a solution of
/// `A^(1/2) u = u^p`.
pub fn rescale_to_solution(w: &SpectralFn, i0: f64, p: f64) -> Result<SpectralFn> {
    if !(i0.is_finite() && i0 > 0.0) {
        return Err(Error::InvalidArgument(format!("I0 must be positive, got {i0}")));
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidArgument(format!("p must exceed 1, got {p}")));
    }
    Ok(w.scaled(i0.powf(1.0 / (p - 1.0))))
}

fn check_sign(u: &GridFn) -> Result<()> {
    let sup = u.sup_abs();
    let min = u.min();
    if min < -1e-10 * sup {
        return Err(Error::SignViolation { min, sup });
    }
    Ok(())
}

/// Coefficients of the projected nonlinearity `P_K (u_+)^p`.
fn projected_power(u: &GridFn, basis: &Arc<EigenBasis>, p: f64) -> SpectralFn {
    let pow: Vec<f64> = u.values().iter().map(|v| v.max(0.0).powf(p)).collect();
    analyze_values(&pow, basis)
}

fn galerkin_residual(f: &SpectralFn, u: &GridFn, p: f64) -> f64 {
    let rhs = projected_power(u, f.basis(), p);
    let s = f.basis().sqrt_lambdas().to_vec();
    let r = f.map_coeffs(|k, b| s[k] * b - rhs.coeffs()[k]);
    synthesize(&r).sup_abs()
}

/// Grid sup-norm of `A^(1/2) u - P_K (u^p)`, the defect of the discrete
/// equation the solver targets.
pub fn residual(u: &SpectralFn, p: f64) -> Result<f64> {
    let grid = synthesize(u);
    check_sign(&grid)?;
    Ok(galerkin_residual(u, &grid, p))
}

/// Grid sup-norm of `A^(1/2) u - u^p` without projecting the power. Includes
/// the truncation error of the `K`-mode representation of `u^p`.
pub fn pointwise_defect(u: &SpectralFn, p: f64) -> Result<f64> {
    let grid = synthesize(u);
    check_sign(&grid)?;
    let lhs = synthesize(&crate::spectral::apply_a_half(u));
    Ok(lhs
        .values()
        .iter()
        .zip(grid.values())
        .fold(0.0, |m, (a, v)| m.max((a - v.max(0.0).powf(p)).abs())))
}

struct Polished {
    solution: SpectralFn,
    residual: f64,
    iterations: usize,
}

/// Fixed-point polish `b <- M^(p/(p-1)) B^(1/2) P_K(u^p)` with the
/// stabilizing factor `M = <A^(1/2) b, b> / <P_K(u^p), b>`, which equals 1 at
/// a solution and removes the unstable scaling direction of the plain map.
/// Steps that do not lower the residual are damped by 1/2.
fn polish(start: SpectralFn, cfg: &SolveConfig) -> Polished {
    let p = cfg.p;
    let basis = start.basis().clone();
    let s = basis.sqrt_lambdas().to_vec();
    let mut b = start;
    let mut grid = synthesize(&b);
    let mut r = galerkin_residual(&b, &grid, p);
    let mut iterations = 0;
    while iterations < cfg.polish_iters && r > cfg.tol_residual {
        let rhs = projected_power(&grid, &basis, p);
        let num = v0_norm_sq(&b);
        let den: f64 = rhs.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x * y).sum();
        if !(den > 0.0 && num > 0.0) {
            break;
        }
        let m = (num / den).powf(p / (p - 1.0));
        let mut cand = rhs.map_coeffs(|k, c| m * c / s[k]);
        let mut cand_grid = synthesize(&cand);
        let mut rc = galerkin_residual(&cand, &cand_grid, p);
        if !(rc < r) {
            cand = b.map_coeffs(|k, c| 0.5 * (c + cand.coeffs()[k]));
            cand_grid = synthesize(&cand);
            rc = galerkin_residual(&cand, &cand_grid, p);
        }
        iterations += 1;
        if !rc.is_finite() {
            break;
        }
        b = cand;
        grid = cand_grid;
        r = rc;
    }
    Polished {
        solution: b,
        residual: r,
        iterations,
    }
}

/// Result of a nonlinear solve.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub domain: DiscreteDomain,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub p: f64,
    pub modes: usize,
    pub converged: bool,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub i0: f64,
    /// Lagrange multiplier of the constraint, identified with `I0`.
    #[serde(serialize_with = "serial::f64_sig17")]
    pub multiplier: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub residual_inf: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub pointwise_defect: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub sup_norm: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub positivity_min: f64,
    /// Largest sup-norm of `u - reflect(u)` over the axes.
    #[serde(serialize_with = "serial::f64_sig17")]
    pub symmetry_defect: f64,
    pub iterations: usize,
    pub minimize_iterations: usize,
    pub minimize_converged: bool,
    pub polish_iterations: usize,
    #[serde(rename = "coefficients")]
    pub solution: SpectralFn,
    #[serde(rename = "values")]
    pub grid: GridFn,
}

/// Runs minimization, rescaling and polish on a fresh basis for `domain`.
pub fn solve(domain: &DiscreteDomain, cfg: &SolveConfig) -> Result<SolveReport> {
    let basis = Arc::new(eigenpairs(domain, cfg.modes)?);
    solve_with_basis(&basis, cfg)
}

pub fn solve_with_basis(basis: &Arc<EigenBasis>, cfg: &SolveConfig) -> Result<SolveReport> {
    let p = cfg.p;
    let min = minimize_i0(basis, cfg)?;
    let start = rescale_to_solution(&min.minimizer, min.i0, p)?;
    let polished = polish(start, cfg);
    let u = polished.solution;
    let grid = synthesize(&u);

    let norm = trace_power(&grid, p).powf(1.0 / (p + 1.0));
    let i0 = if norm > 0.0 {
        v0_norm_sq(&u) / (norm * norm)
    } else {
        min.i0
    };
    let dim = basis.domain().dimension();
    let symmetry_defect = (0..dim)
        .map(|axis| {
            reflect(&grid, axis)
                .and_then(|r| r.max_abs_diff(&grid))
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);
    let defect = pointwise_defect(&u, p).unwrap_or(f64::NAN);
    let converged = polished.residual.is_finite() && polished.residual <= cfg.tol_residual;

    Ok(SolveReport {
        domain: *basis.domain(),
        p,
        modes: basis.len(),
        converged,
        i0,
        multiplier: i0,
        residual_inf: polished.residual,
        pointwise_defect: defect,
        sup_norm: grid.sup_abs(),
        positivity_min: grid.min(),
        symmetry_defect,
        iterations: min.iterations + polished.iterations,
        minimize_iterations: min.iterations,
        minimize_converged: min.converged,
        polish_iterations: polished.iterations,
        solution: u,
        grid,
    })
}

/// One row of an exponent sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    #[serde(serialize_with = "serial::f64_sig17")]
    pub p: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub sup_norm: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub residual: f64,
    pub converged: bool,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub i0: f64,
    pub error: Option<String>,
}

impl SweepRow {
    fn from_result(p: f64, result: Result<SolveReport>) -> Self {
        match result {
            Ok(r) => Self {
                p,
                sup_norm: r.sup_norm,
                residual: r.residual_inf,
                converged: r.converged,
                i0: r.i0,
                error: None,
            },
            Err(e) => Self {
                p,
                sup_norm: f64::NAN,
                residual: f64::NAN,
                converged: false,
                i0: f64::NAN,
                error: Some(e.to_string()),
            },
        }
    }
}

/// Solves once per exponent. Rows come back in input order; a failing row is
/// flagged instead of aborting the sweep. `threads` caps parallelism.
pub fn sweep(
    domain: &DiscreteDomain,
    p_list: &[f64],
    cfg: &SolveConfig,
    threads: Option<usize>,
) -> Result<Vec<SweepRow>> {
    if p_list.is_empty() {
        return Ok(Vec::new());
    }
    let basis = Arc::new(eigenpairs(domain, cfg.modes)?);
    let run = |p: &f64| {
        let row_cfg = SolveConfig { p: *p, ..cfg.clone() };
        SweepRow::from_result(*p, solve_with_basis(&basis, &row_cfg))
    };
    let pool = threads.and_then(|n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .ok()
    });
    Ok(match pool {
        Some(pool) => pool.install(|| p_list.par_iter().map(run).collect()),
        None => p_list.par_iter().map(run).collect(),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::basis::DiscreteDomain;
    use crate::spectral::apply_a_half;

    fn unit_basis(n: usize, k: usize) -> Arc<EigenBasis> {
        Arc::new(eigenpairs(&DiscreteDomain::interval(1.0, n).unwrap(), k).unwrap())
    }

    #[test]
    fn critical_exponents() {
        assert_eq!(critical_exponent(2).unwrap(), 3.0);
        assert_eq!(critical_exponent(3).unwrap(), 2.0);
        assert_eq!(critical_exponent(1).unwrap(), f64::INFINITY);
        assert!(critical_exponent(0).is_err());
    }

    #[test]
    fn config_rejections() {
        let sq = DiscreteDomain::rectangle(1.0, 1.0, 64, 64).unwrap();
        let basis = eigenpairs(&sq, 60).unwrap();
        let base = SolveConfig { modes: 60, ..SolveConfig::default() };
        assert!(base.validate(&basis).is_ok());

        let supercritical = SolveConfig { p: 5.0, ..base.clone() };
        assert!(matches!(supercritical.validate(&basis), Err(Error::RejectedConfig(_))));
        let near = SolveConfig { p: 2.9, ..base.clone() };
        assert!(near.validate(&basis).is_err());
        let near_ok = SolveConfig { near_critical_override: true, ..near };
        assert!(near_ok.validate(&basis).is_ok());

        let line = unit_basis(256, 64);
        let one = SolveConfig { p: 1.0001, ..SolveConfig::default() };
        assert!(matches!(one.validate(&line), Err(Error::RejectedConfig(_))));
        let big = SolveConfig { p: 7.0, ..SolveConfig::default() };
        assert!(big.validate(&line).is_ok());
        let bad_tol = SolveConfig { tol_residual: 0.0, ..SolveConfig::default() };
        assert!(bad_tol.validate(&line).is_err());
        let bad_bt = SolveConfig { backtrack_factor: 1.0, ..SolveConfig::default() };
        assert!(bad_bt.validate(&line).is_err());

        // 64 modes on a 128 grid breaks the 4K dealiasing margin
        let coarse = unit_basis(128, 64);
        assert!(SolveConfig::default().validate(&coarse).is_err());
    }

    #[test]
    fn rescale_examples() {
        let b = unit_basis(64, 4);
        let w = SpectralFn::from_prefix(b, &[1.0, 0.0, -0.5]).unwrap();
        assert_eq!(rescale_to_solution(&w, 1.0, 2.0).unwrap().coeffs(), w.coeffs());
        let u = rescale_to_solution(&w, 4.0, 2.0).unwrap();
        assert_eq!(u.coeffs(), &[4.0, 0.0, -2.0, 0.0]);
        assert!(rescale_to_solution(&w, 0.0, 2.0).is_err());
        assert!(rescale_to_solution(&w, -1.0, 2.0).is_err());
    }

    #[test]
    fn residual_examples() {
        let b = unit_basis(256, 64);
        assert_eq!(residual(&SpectralFn::zeros(b.clone()), 2.0).unwrap(), 0.0);

        let phi1 = SpectralFn::mode(b.clone(), 0);
        // pointwise, φ1 is far from solving the equation
        let d = pointwise_defect(&phi1, 2.0).unwrap();
        let grid = synthesize(&phi1);
        let direct = grid
            .values()
            .iter()
            .map(|v| (PI * v - v * v).abs())
            .fold(0.0, f64::max);
        assert!((d - direct).abs() < 1e-12);
        assert!(residual(&phi1, 2.0).unwrap() > 0.1);

        let neg = phi1.scaled(-1.0);
        assert!(matches!(residual(&neg, 2.0), Err(Error::SignViolation { .. })));
    }

    #[test]
    fn first_step_descends_from_ground_mode() {
        let b = unit_basis(256, 64);
        let cfg = SolveConfig { max_iter: 1, ..SolveConfig::default() };
        let m = minimize_i0(&b, &cfg).unwrap();
        assert_eq!(m.energy_trace.len(), 2);
        assert!(m.energy_trace[1] <= m.energy_trace[0]);
    }

    #[test]
    fn minimization_invariants() {
        let b = unit_basis(256, 64);
        let cfg = SolveConfig {
            perturbation: 0.2,
            rng_seed: 7,
            ..SolveConfig::default()
        };
        let m = minimize_i0(&b, &cfg).unwrap();
        assert!(m.converged);
        assert!(m.i0 > 0.0);
        assert!(m.max_constraint_defect <= 1e-12);
        assert!(m.energy_trace.windows(2).all(|w| w[1] <= w[0]));
        let w = synthesize(&m.minimizer);
        assert!(w.min() >= 0.0);
    }

    #[test]
    fn euler_lagrange_multiplier_is_i0() {
        // A w = I0 P(w^p) at the constrained minimizer
        let b = unit_basis(256, 64);
        let cfg = SolveConfig { grad_tol: 1e-9, ..SolveConfig::default() };
        let m = minimize_i0(&b, &cfg).unwrap();
        let w = &m.minimizer;
        let aw = apply_a_half(w);
        let pw = projected_power(&synthesize(w), &b, 2.0);
        let mu = aw.dot(w).unwrap() / pw.dot(w).unwrap();
        assert!((mu - m.i0).abs() < 1e-9 * m.i0);
    }

    #[test]
    fn solve_interval() {
        let d = DiscreteDomain::interval(1.0, 256).unwrap();
        let r = solve(&d, &SolveConfig::default()).unwrap();
        assert!(r.converged);
        assert!(r.residual_inf <= 1e-10);
        assert!(r.positivity_min > 0.0);
        assert!(r.symmetry_defect <= 1e-8);
        assert_eq!(r.multiplier, r.i0);
        assert!(r.i0 > 0.0);
        // u = I0^(1/(p-1)) w with ∫ w^(p+1) = 1 gives ∫ u^3 = I0^3 for p = 2
        let g = trace_power(&r.grid, 2.0);
        assert!((g - r.i0.powi(3)).abs() < 1e-8 * g);
    }

    #[test]
    fn rejected_solve() {
        let sq = DiscreteDomain::rectangle(1.0, 1.0, 64, 64).unwrap();
        let cfg = SolveConfig { p: 5.0, modes: 60, ..SolveConfig::default() };
        assert!(matches!(solve(&sq, &cfg), Err(Error::RejectedConfig(_))));
    }

    #[test]
    fn sweep_edges() {
        let d = DiscreteDomain::interval(1.0, 128).unwrap();
        let cfg = SolveConfig { modes: 32, ..SolveConfig::default() };
        assert!(sweep(&d, &[], &cfg, None).unwrap().is_empty());
        let rows = sweep(&d, &[2.0, 0.5, 1.5], &cfg, Some(2)).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].p, 0.5);
        assert!(!rows[1].converged && rows[1].error.is_some());
        assert!(rows[0].converged && rows[2].converged);
        assert!(rows[0].sup_norm.is_finite());
    }
}

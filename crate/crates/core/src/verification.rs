//! Checks of maximum principles, Hopf boundary behaviour, symmetry and
//! monotonicity on computed grid functions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{reflect, DiscreteDomain, EigenBasis, GridFn};
use crate::error::{Error, Result};
use crate::serial;
use crate::spectral::{analyze, apply_b_half, synthesize};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub metric: f64,
    #[serde(serialize_with = "serial::f64_sig17")]
    pub tolerance: f64,
    pub detail: String,
}

impl CheckReport {
    fn new(name: impl Into<String>, passed: bool, metric: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            metric,
            tolerance,
            detail,
        }
    }
}

/// Relative tolerance of the discrete weak maximum principle.
pub const WEAK_MP_RELATIVE_TOL: f64 = 1e-8;
/// Default relative tolerance of the reflection check.
pub const SYMMETRY_RELATIVE_TOL: f64 = 1e-8;
/// Slack allowed on forward differences past the midline.
pub const MONOTONICITY_RELATIVE_TOL: f64 = 1e-10;
/// Relative floor for inward boundary difference quotients.
pub const HOPF_RELATIVE_FLOOR: f64 = 1e-6;

fn check_axis(u: &GridFn, axis: usize) -> Result<()> {
    let dimension = u.domain().dimension();
    if axis >= dimension {
        return Err(Error::AxisOutOfRange { axis, dimension });
    }
    Ok(())
}

/// `u = B^(1/2) g` for `g >= 0` must stay nonnegative up to
/// `1e-8 * sup g`.
pub fn check_weak_mp(basis: &Arc<EigenBasis>, g: &GridFn) -> Result<CheckReport> {
    if let Some(v) = g.values().iter().find(|v| **v < 0.0) {
        return Err(Error::Precondition(format!(
            "weak maximum principle needs g >= 0, found {v}"
        )));
    }
    let u = synthesize(&apply_b_half(&analyze(g, basis)?));
    let tolerance = WEAK_MP_RELATIVE_TOL * g.sup_abs();
    let min = u.min();
    Ok(CheckReport::new(
        "weak_maximum_principle",
        min >= -tolerance,
        min,
        tolerance,
        format!("min B^(1/2) g = {min:e}, sup g = {:e}", g.sup_abs()),
    ))
}

/// Either `u > 0` everywhere or `u ≡ 0`.
pub fn check_positivity(u: &GridFn) -> CheckReport {
    let min = u.min();
    let zero = u.values().iter().all(|v| *v == 0.0);
    let detail = if zero {
        "identically zero".to_string()
    } else {
        format!("min u = {min:e}")
    };
    CheckReport::new("positivity", min > 0.0 || zero, min, 0.0, detail)
}

/// Sup-norm distance between `u` and its mirror image across the midline of
/// `axis`, against `1e-8 * sup|u|`.
pub fn check_symmetry(u: &GridFn, axis: usize) -> Result<CheckReport> {
    check_symmetry_with(u, axis, SYMMETRY_RELATIVE_TOL)
}

pub fn check_symmetry_with(u: &GridFn, axis: usize, relative_tol: f64) -> Result<CheckReport> {
    check_axis(u, axis)?;
    let metric = reflect(u, axis)?.max_abs_diff(u)?;
    let tolerance = relative_tol * u.sup_abs();
    Ok(CheckReport::new(
        format!("symmetry_axis_{axis}"),
        metric <= tolerance,
        metric,
        tolerance,
        format!("sup |u - Ru| = {metric:e}"),
    ))
}

/// Forward differences along `axis` from the midline outwards must be
/// nonpositive (up to `1e-10 * sup|u|`); the metric is the largest one.
pub fn check_monotonicity(u: &GridFn, axis: usize) -> Result<CheckReport> {
    check_axis(u, axis)?;
    let domain = u.domain();
    let n = domain.grid_counts()[axis];
    let mut worst = f64::NEG_INFINITY;
    for i in 0..domain.node_count() {
        let pos = domain.node_position(i);
        // grid position j sits at (j + 1) h; start at the first node on or past L/2
        let j = pos[axis] + 1;
        if 2 * j < n || j + 1 >= n {
            continue;
        }
        let mut next = pos;
        next[axis] += 1;
        let diff = u.values()[domain.node_index(next)] - u.values()[i];
        worst = worst.max(diff);
    }
    if worst == f64::NEG_INFINITY {
        worst = 0.0;
    }
    let tolerance = MONOTONICITY_RELATIVE_TOL * u.sup_abs();
    Ok(CheckReport::new(
        format!("monotonicity_axis_{axis}"),
        worst <= tolerance,
        worst,
        tolerance,
        format!("largest forward difference past the midline = {worst:e}"),
    ))
}

/// Smallest inward difference quotient `u(first interior node) / h` over all
/// boundary faces; must be strictly positive and at least `1e-6 * sup|u|`.
pub fn check_hopf(u: &GridFn) -> CheckReport {
    let domain = u.domain();
    let dim = domain.dimension();
    let mut worst = f64::INFINITY;
    for i in 0..domain.node_count() {
        let pos = domain.node_position(i);
        for axis in 0..dim {
            let last = domain.interior_count(axis) - 1;
            if pos[axis] == 0 || pos[axis] == last {
                worst = worst.min(u.values()[i] / domain.spacing(axis));
            }
        }
    }
    let floor = HOPF_RELATIVE_FLOOR * u.sup_abs();
    CheckReport::new(
        "hopf",
        worst > 0.0 && worst >= floor,
        worst,
        floor,
        format!("smallest inward boundary quotient = {worst:e}"),
    )
}

/// Spectral-gap margin `sqrt(λ_1) - ‖c⁻‖∞`. A positive margin makes
/// `<(A^(1/2) + c) u, u>` coercive, which is what drives the maximum
/// principle on small domains.
pub fn stability_margin(domain: &DiscreteDomain, c_minus_inf: f64) -> Result<CheckReport> {
    if !(c_minus_inf.is_finite() && c_minus_inf >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "‖c⁻‖∞ must be finite and nonnegative, got {c_minus_inf}"
        )));
    }
    let gap = domain.first_eigenvalue().sqrt();
    let margin = gap - c_minus_inf;
    Ok(CheckReport::new(
        "stability_margin",
        margin > 0.0,
        margin,
        0.0,
        format!("sqrt(lambda_1) = {gap:e}, c_minus = {c_minus_inf:e}"),
    ))
}

/// Seeded nonnegative test data for the weak maximum principle: even draws
/// are iid uniform node values, odd draws are hat bumps of random centre and
/// width.
pub fn random_nonnegative(domain: &DiscreteDomain, rng: &mut impl Rng, draw: usize) -> GridFn {
    let dim = domain.dimension();
    if draw.is_multiple_of(2) {
        let values = (0..domain.node_count()).map(|_| rng.gen::<f64>()).collect();
        GridFn::new(*domain, values).expect("uniform draws are finite")
    } else {
        let centre: Vec<f64> = (0..dim).map(|a| rng.gen::<f64>() * domain.lengths()[a]).collect();
        let width: Vec<f64> = (0..dim)
            .map(|a| (0.02 + 0.3 * rng.gen::<f64>()) * domain.lengths()[a])
            .collect();
        GridFn::from_fn(*domain, |x| {
            (0..dim)
                .map(|a| (1.0 - (x[a] - centre[a]).abs() / width[a]).max(0.0))
                .product()
        })
        .expect("hat values are finite")
    }
}

/// Runs [`check_weak_mp`] over `samples` seeded random nonnegative inputs and
/// reports the worst relative minimum.
pub fn check_weak_mp_sample(
    basis: &Arc<EigenBasis>,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut passed = true;
    for draw in 0..samples {
        let g = random_nonnegative(basis.domain(), &mut rng, draw);
        let sup = g.sup_abs();
        if sup == 0.0 {
            continue;
        }
        let report = check_weak_mp(basis, &g)?;
        passed &= report.passed;
        worst = worst.min(report.metric / sup);
    }
    if worst == f64::INFINITY {
        worst = 0.0;
    }
    Ok(CheckReport::new(
        "weak_maximum_principle_sample",
        passed,
        worst,
        -WEAK_MP_RELATIVE_TOL,
        format!("worst min(B^(1/2) g) / sup g over {samples} seeded draws = {worst:e}"),
    ))
}

/// Positivity, symmetry and monotonicity along every axis, and Hopf on a
/// computed solution.
pub fn solution_battery(u: &GridFn) -> Vec<CheckReport> {
    let mut out = vec![check_positivity(u)];
    for axis in 0..u.domain().dimension() {
        out.push(check_symmetry(u, axis).expect("axis in range"));
    }
    for axis in 0..u.domain().dimension() {
        out.push(check_monotonicity(u, axis).expect("axis in range"));
    }
    out.push(check_hopf(u));
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::basis::eigenpairs;

    fn unit_basis(n: usize, k: usize) -> Arc<EigenBasis> {
        Arc::new(eigenpairs(&DiscreteDomain::interval(1.0, n).unwrap(), k).unwrap())
    }

    #[test]
    fn weak_mp_examples() {
        let b = unit_basis(256, 64);
        let bump = GridFn::from_fn(*b.domain(), |x| {
            (1.0 - ((x[0] - 0.5) / 0.25).powi(2)).max(0.0)
        })
        .unwrap();
        let r = check_weak_mp(&b, &bump).unwrap();
        assert!(r.passed, "{r:?}");

        let zero = GridFn::zeros(*b.domain());
        let r = check_weak_mp(&b, &zero).unwrap();
        assert!(r.passed && r.metric == 0.0);

        let mut v = vec![1.0; 255];
        v[10] = -0.1;
        let neg = GridFn::new(*b.domain(), v).unwrap();
        assert!(matches!(check_weak_mp(&b, &neg), Err(Error::Precondition(_))));
    }

    #[test]
    fn positivity_examples() {
        let b = unit_basis(64, 2);
        assert!(check_positivity(b.mode(0)).passed);
        let zero = GridFn::zeros(*b.domain());
        assert!(check_positivity(&zero).passed);
        let mut v = b.mode(0).values().to_vec();
        v[3] = -0.5;
        let r = check_positivity(&GridFn::new(*b.domain(), v).unwrap());
        assert!(!r.passed);
        assert_eq!(r.metric, -0.5);
    }

    #[test]
    fn symmetry_examples() {
        let b = unit_basis(256, 3);
        let r = check_symmetry(b.mode(0), 0).unwrap();
        assert!(r.passed && r.metric <= 1e-13);
        let r = check_symmetry(b.mode(1), 0).unwrap();
        assert!(!r.passed);
        assert!((r.metric - 2.0 * b.mode(1).sup_abs()).abs() < 1e-13);
        assert!(matches!(check_symmetry(b.mode(0), 1), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn symmetry_scales_with_amplitude() {
        let d = DiscreteDomain::interval(1.0, 32).unwrap();
        let u = GridFn::from_fn(d, |x| x[0] * (1.0 - x[0]) + 0.01 * x[0]).unwrap();
        let m = check_symmetry(&u, 0).unwrap();
        for c in [-3.0, 0.5, 1e4] {
            let mc = check_symmetry(&u.scaled(c), 0).unwrap();
            assert!((mc.metric - c.abs() * m.metric).abs() <= 1e-12 * c.abs() * m.metric);
            assert_eq!(mc.passed, m.passed);
        }
    }

    #[test]
    fn monotonicity_examples() {
        let b = unit_basis(256, 3);
        assert!(check_monotonicity(b.mode(0), 0).unwrap().passed);
        assert!(!check_monotonicity(b.mode(2), 0).unwrap().passed);
        assert!(check_monotonicity(b.mode(0), 3).is_err());
    }

    #[test]
    fn hopf_examples() {
        let b = unit_basis(256, 1);
        let r = check_hopf(b.mode(0));
        assert!(r.passed);
        // difference quotient √2 sin(πh)/h, within O(h²) of the derivative √2 π cos(0)
        let h = 1.0 / 256.0;
        assert!((r.metric - 2f64.sqrt() * (PI * h).sin() / h).abs() < 1e-12);
        assert!((r.metric - 2f64.sqrt() * PI).abs() < 1e-3 * 2f64.sqrt() * PI);
        let r = check_hopf(&GridFn::zeros(*b.domain()));
        assert!(!r.passed && r.metric == 0.0);
    }

    #[test]
    fn hopf_on_rectangle_sees_every_face() {
        let d = DiscreteDomain::rectangle(1.0, 1.0, 16, 16).unwrap();
        let mut u = GridFn::from_fn(d, |x| (PI * x[0]).sin() * (PI * x[1]).sin()).unwrap();
        assert!(check_hopf(&u).passed);
        let mut v = u.values().to_vec();
        let idx = d.node_index([7, 14]); // on the face x2 = 1 - h
        v[idx] = 0.0;
        u = GridFn::new(d, v).unwrap();
        assert!(!check_hopf(&u).passed);
    }

    #[test]
    fn margin_examples() {
        let unit = DiscreteDomain::interval(1.0, 16).unwrap();
        let r = stability_margin(&unit, 1.0).unwrap();
        assert!(r.passed && (r.metric - (PI - 1.0)).abs() < 1e-14);
        let r = stability_margin(&unit, 10.0).unwrap();
        assert!(!r.passed && (r.metric - (PI - 10.0)).abs() < 1e-14);
        let small = DiscreteDomain::interval(PI / 20.0, 16).unwrap();
        let r = stability_margin(&small, 10.0).unwrap();
        assert!(r.passed && (r.metric - 10.0).abs() < 1e-12);
        assert!(stability_margin(&unit, -1.0).is_err());
    }

    #[test]
    fn weak_mp_sample_passes() {
        let b = unit_basis(256, 64);
        let r = check_weak_mp_sample(&b, 20, 3).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

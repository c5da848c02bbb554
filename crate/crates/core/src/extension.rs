//! Harmonic extension to the half-cylinder `Ω x (0, ∞)` and the half-space
//! trace-Sobolev extremals.
//!
//! For a trace `u = sum_k b_k phi_k` the extension vanishing on the lateral
//! boundary is `v(x, y) = sum_k b_k phi_k(x) exp(-sqrt(λ_k) y)`. Its Dirichlet
//! energy is `sum_k b_k^2 sqrt(λ_k)` and `-∂_y v(·, 0) = A^(1/2) u`.

use std::f64::consts::PI;

use crate::basis::GridFn;
use crate::error::{Error, Result};
use crate::spectral::{synthesize, v0_norm_sq, SpectralFn};

/// The harmonic extension of a trace.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    trace: SpectralFn,
}

fn check_height(y: f64) -> Result<()> {
    if !(y.is_finite() && y >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "height must be finite and nonnegative, got {y}"
        )));
    }
    Ok(())
}

impl ExtensionField {
    pub fn new(trace: SpectralFn) -> Self {
        Self { trace }
    }

    pub fn trace(&self) -> &SpectralFn {
        &self.trace
    }

    /// Coefficients of `v(·, y)`.
    pub fn slice_coeffs(&self, y: f64) -> Result<SpectralFn> {
        check_height(y)?;
        let s = self.trace.basis().sqrt_lambdas().to_vec();
        Ok(self.trace.map_coeffs(|k, b| b * (-s[k] * y).exp()))
    }

    /// Grid samples of `v(·, y)`.
    pub fn slice(&self, y: f64) -> Result<GridFn> {
        Ok(synthesize(&self.slice_coeffs(y)?))
    }

    /// `|∇v|^2` at an arbitrary point of the closed cylinder.
    pub fn gradient_sq_at(&self, x: &[f64], y: f64) -> f64 {
        let basis = self.trace.basis();
        let mut gx = [0.0; 2];
        let mut gy = 0.0;
        for (k, (b, s)) in self
            .trace
            .coeffs()
            .iter()
            .zip(basis.sqrt_lambdas())
            .enumerate()
        {
            if *b == 0.0 {
                continue;
            }
            let decay = b * (-s * y).exp();
            let g = basis.mode_gradient_at(k, x);
            gx[0] += decay * g[0];
            gx[1] += decay * g[1];
            gy -= decay * s * basis.mode_value_at(k, x);
        }
        gx[0] * gx[0] + gx[1] * gx[1] + gy * gy
    }
}

pub fn evaluate_extension(f: &SpectralFn, y: f64) -> Result<GridFn> {
    ExtensionField::new(f.clone()).slice(y)
}

/// Closed-form Dirichlet energy of the extension.
pub fn dirichlet_energy(f: &SpectralFn) -> f64 {
    v0_norm_sq(f)
}

/// Composite trapezoid rule for `∫|∇v|^2` over `[0, L]^n x [0, height]` with
/// `nx` intervals per spatial axis and `ny` in height.
pub fn cylinder_energy_quadrature(
    f: &SpectralFn,
    height: f64,
    nx: usize,
    ny: usize,
) -> Result<f64> {
    if !(height.is_finite() && height > 0.0) || nx == 0 || ny == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs a positive height and at least one interval per axis".into(),
        ));
    }
    let field = ExtensionField::new(f.clone());
    let domain = *f.basis().domain();
    let dim = domain.dimension();
    let trapezoid = |n: usize, len: f64| -> Vec<(f64, f64)> {
        let h = len / n as f64;
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 * h } else { h };
                (i as f64 * h, w)
            })
            .collect()
    };
    let ys = trapezoid(ny, height);
    let x0 = trapezoid(nx, domain.lengths()[0]);
    let x1 = if dim == 2 {
        trapezoid(nx, domain.lengths()[1])
    } else {
        vec![(0.0, 1.0)]
    };
    let mut total = 0.0;
    for &(a, wa) in &x0 {
        for &(b, wb) in &x1 {
            let x = [a, b];
            let column: f64 = ys
                .iter()
                .map(|&(y, wy)| wy * field.gradient_sq_at(&x[..dim], y))
                .sum();
            total += wa * wb * column;
        }
    }
    Ok(total)
}

/// One-sided difference `-(v(·, h) - v(·, 0)) / h`, a first-order
/// approximation of `A^(1/2) u`.
pub fn dtn_fd(f: &SpectralFn, h: f64) -> Result<GridFn> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "height step must be positive, got {h}"
        )));
    }
    let field = ExtensionField::new(f.clone());
    let top = field.slice(h)?;
    let base = field.slice(0.0)?;
    let values = top
        .values()
        .iter()
        .zip(base.values())
        .map(|(t, b)| -(t - b) / h)
        .collect();
    GridFn::new(*f.basis().domain(), values)
}

/// Surface measure of the unit sphere `S^n ⊂ R^(n+1)`.
pub fn sphere_measure(n: usize) -> f64 {
    match n {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (n as f64 - 1.0) * sphere_measure(n - 2),
    }
}

/// Sharp constant `(n - 1) σ_n^(1/n) / 2` of the half-space trace-Sobolev
/// inequality.
pub fn best_trace_constant(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "trace constant needs n >= 2, got {n}"
        )));
    }
    Ok((n as f64 - 1.0) * sphere_measure(n).powf(1.0 / n as f64) / 2.0)
}

/// The bubble `ε^((n-1)/2) / |(x - x0, y + ε)|^(n-1)` on the upper half-space
/// of `R^(n+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalProfile {
    n: usize,
    epsilon: f64,
    x0: Vec<f64>,
}

impl ExtremalProfile {
    pub fn new(n: usize, epsilon: f64, x0: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("profile needs n >= 2, got {n}")));
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if x0.len() != n || x0.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "center must have {n} finite coordinates"
            )));
        }
        Ok(Self { n, epsilon, x0 })
    }

    /// Profile centred at the origin.
    pub fn centered(n: usize, epsilon: f64) -> Result<Self> {
        Self::new(n, epsilon, vec![0.0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn center(&self) -> &[f64] {
        &self.x0
    }

    /// Critical trace exponent `2n / (n - 1)`.
    pub fn trace_exponent(&self) -> f64 {
        2.0 * self.n as f64 / (self.n as f64 - 1.0)
    }

    /// Value at planar distance `rho` from the centre and height `y`.
    pub fn radial_value(&self, rho: f64, y: f64) -> f64 {
        let m = self.n as f64 - 1.0;
        let r2 = rho * rho + (y + self.epsilon).powi(2);
        self.epsilon.powf(m / 2.0) * r2.powf(-m / 2.0)
    }

    /// `(∂_rho U, ∂_y U)`.
    pub fn radial_gradient(&self, rho: f64, y: f64) -> (f64, f64) {
        let m = self.n as f64 - 1.0;
        let r2 = rho * rho + (y + self.epsilon).powi(2);
        let c = -m * self.epsilon.powf(m / 2.0) * r2.powf(-(m + 2.0) / 2.0);
        (c * rho, c * (y + self.epsilon))
    }

    pub fn value_at(&self, x: &[f64], y: f64) -> f64 {
        let rho = x
            .iter()
            .zip(&self.x0)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        self.radial_value(rho, y)
    }
}

/// Trapezoid nodes on `[0, radius]`: half of the intervals uniform on
/// `[0, 10ε]`, the rest geometrically stretched out to `radius`.
fn stretched_nodes(radius: f64, epsilon: f64, intervals: usize) -> Vec<(f64, f64)> {
    let knee = 10.0 * epsilon;
    let mut xs = Vec::with_capacity(intervals + 1);
    if radius <= knee {
        let h = radius / intervals as f64;
        xs.extend((0..=intervals).map(|i| i as f64 * h));
    } else {
        let uniform = intervals / 2;
        let geometric = intervals - uniform;
        let h = knee / uniform as f64;
        xs.extend((0..=uniform).map(|i| i as f64 * h));
        let ratio = (radius / knee).powf(1.0 / geometric as f64);
        xs.extend((1..=geometric).map(|i| knee * ratio.powi(i as i32)));
        *xs.last_mut().unwrap() = radius;
    }
    let last = xs.len() - 1;
    (0..=last)
        .map(|i| {
            let left = if i > 0 { xs[i] - xs[i - 1] } else { 0.0 };
            let right = if i < last { xs[i + 1] - xs[i] } else { 0.0 };
            (xs[i], 0.5 * (left + right))
        })
        .collect()
}

/// Trace-Sobolev Rayleigh quotient of `profile` restricted to the box
/// `{rho <= radius, 0 <= y <= radius}`, using rotational symmetry about the
/// centre to reduce the half-space integrals to `(rho, y)` quadrature with
/// `resolution` intervals per axis. Only `n = 2` is supported.
pub fn extremal_quotient(
    profile: &ExtremalProfile,
    radius: f64,
    resolution: usize,
) -> Result<f64> {
    if profile.n != 2 {
        return Err(Error::InvalidArgument(format!(
            "extremal quotient is implemented for n = 2 only, got {}",
            profile.n
        )));
    }
    if !(radius.is_finite() && radius > profile.epsilon) {
        return Err(Error::Truncation {
            radius,
            epsilon: profile.epsilon,
        });
    }
    if resolution < 64 {
        return Err(Error::InvalidArgument(format!(
            "quadrature resolution must be at least 64, got {resolution}"
        )));
    }
    let nodes = stretched_nodes(radius, profile.epsilon, resolution);
    // planar area element for n = 2
    let shell = |rho: f64| 2.0 * PI * rho;

    let mut energy = 0.0;
    for &(rho, w_rho) in &nodes {
        let column: f64 = nodes
            .iter()
            .map(|&(y, w_y)| {
                let (gr, gy) = profile.radial_gradient(rho, y);
                w_y * (gr * gr + gy * gy)
            })
            .sum();
        energy += w_rho * shell(rho) * column;
    }

    let q = profile.trace_exponent();
    let trace: f64 = nodes
        .iter()
        .map(|&(rho, w)| w * shell(rho) * profile.radial_value(rho, 0.0).abs().powf(q))
        .sum();
    Ok(energy / trace.powf(2.0 / q))
}

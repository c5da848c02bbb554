//! Coefficient-space functions and the diagonal operators built on the
//! Dirichlet eigenbasis.
//!
//! A [`SpectralFn`] stores `b_k` in `u = sum_k b_k phi_k`. `A^(1/2)`, its
//! inverse and `(-Δ)^(-1)` scale `b_k` by `sqrt(λ_k)`, `1/sqrt(λ_k)` and
//! `1/λ_k`. Grid space is only used for quadrature and nonlinear terms.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::basis::{boundary_distance, EigenBasis, GridFn};
use crate::error::{Error, Result};
use crate::serial;

#[derive(Debug, Clone)]
pub struct SpectralFn {
    basis: Arc<EigenBasis>,
    coeffs: Vec<f64>,
}

impl SpectralFn {
    pub fn new(basis: Arc<EigenBasis>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(Self { basis, coeffs })
    }

    /// Coefficient vector padded with zeros up to the basis size.
    pub fn from_prefix(basis: Arc<EigenBasis>, prefix: &[f64]) -> Result<Self> {
        if prefix.len() > basis.len() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given for a {}-mode basis",
                prefix.len(),
                basis.len()
            )));
        }
        let mut coeffs = prefix.to_vec();
        coeffs.resize(basis.len(), 0.0);
        Self::new(basis, coeffs)
    }

    pub fn zeros(basis: Arc<EigenBasis>) -> Self {
        let coeffs = vec![0.0; basis.len()];
        Self { basis, coeffs }
    }

    /// The `k`-th (zero-based) eigenfunction.
    pub fn mode(basis: Arc<EigenBasis>, k: usize) -> Self {
        let mut f = Self::zeros(basis);
        f.coeffs[k] = 1.0;
        f
    }

    pub(crate) fn from_raw(basis: Arc<EigenBasis>, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), basis.len());
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> &Arc<EigenBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map_coeffs(|_, b| c * b)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    /// Coefficientwise map `b_k -> f(k, b_k)` on the same basis.
    pub(crate) fn map_coeffs(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, b)| f(k, *b)).collect();
        Self::from_raw(self.basis.clone(), coeffs)
    }

    /// Euclidean dot product of coefficient vectors.
    pub fn dot(&self, other: &SpectralFn) -> Result<f64> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::DomainMismatch);
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }
}

impl Serialize for SpectralFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serial::slice_sig17(&self.coeffs, s)
    }
}

pub(crate) fn same_basis(a: &Arc<EigenBasis>, b: &Arc<EigenBasis>) -> bool {
    Arc::ptr_eq(a, b) || (a.domain() == b.domain() && a.indices() == b.indices())
}

/// Projection `b_k = <u, phi_k>` onto the basis.
pub fn analyze(u: &GridFn, basis: &Arc<EigenBasis>) -> Result<SpectralFn> {
    if u.domain() != basis.domain() {
        return Err(Error::DomainMismatch);
    }
    Ok(analyze_values(u.values(), basis))
}

pub(crate) fn analyze_values(values: &[f64], basis: &Arc<EigenBasis>) -> SpectralFn {
    let w = basis.domain().quadrature_weight();
    let coeffs = basis
        .modes()
        .iter()
        .map(|m| m.values().iter().zip(values).map(|(a, b)| a * b).sum::<f64>() * w)
        .collect();
    SpectralFn::from_raw(basis.clone(), coeffs)
}

/// Pointwise `sum_k b_k phi_k` on the grid.
pub fn synthesize(f: &SpectralFn) -> GridFn {
    let domain = *f.basis.domain();
    let mut values = vec![0.0; domain.node_count()];
    for (b, mode) in f.coeffs.iter().zip(f.basis.modes()) {
        if *b == 0.0 {
            continue;
        }
        for (v, m) in values.iter_mut().zip(mode.values()) {
            *v += b * m;
        }
    }
    GridFn::from_raw(domain, values)
}

pub fn apply_a_half(f: &SpectralFn) -> SpectralFn {
    let s = f.basis.sqrt_lambdas().to_vec();
    f.map_coeffs(|k, b| b * s[k])
}

pub fn apply_b_half(f: &SpectralFn) -> SpectralFn {
    let s = f.basis.sqrt_lambdas().to_vec();
    f.map_coeffs(|k, b| b / s[k])
}

pub fn apply_inv_laplacian(f: &SpectralFn) -> SpectralFn {
    let l = f.basis.lambdas().to_vec();
    f.map_coeffs(|k, b| b / l[k])
}

/// Spectral seminorm `sum_k b_k^2 sqrt(λ_k)`.
pub fn v0_norm_sq(f: &SpectralFn) -> f64 {
    f.coeffs
        .iter()
        .zip(f.basis.sqrt_lambdas())
        .map(|(b, s)| b * b * s)
        .sum()
}

/// `(∫ u²/d) / v0_norm_sq(u)`, the integral taken by nodal quadrature over
/// interior nodes where `d > 0`.
pub fn hardy_quotient(f: &SpectralFn) -> Result<f64> {
    let energy = v0_norm_sq(f);
    if f.is_zero() || energy == 0.0 {
        return Err(Error::UndefinedQuotient);
    }
    let domain = f.basis.domain();
    let u = synthesize(f);
    let d = boundary_distance(domain);
    let integral: f64 = u
        .values()
        .iter()
        .zip(d.values())
        .map(|(v, dist)| v * v / dist)
        .sum::<f64>()
        * domain.quadrature_weight();
    Ok(integral / energy)
}

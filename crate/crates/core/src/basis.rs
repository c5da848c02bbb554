//! Discretized intervals and rectangles, grid functions and the analytic
//! Dirichlet eigenbasis.
//!
//! Interior nodes sit at `i * h` for `i = 1..N-1` with `h = L / N` along each
//! axis; boundary nodes are never stored. With the flat quadrature weight
//! `h` (or `h1 * h2`) the sampled sine modes are exactly discretely
//! orthonormal as long as every mode index stays below `N`.

use std::f64::consts::PI;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serial;

/// Smallest accepted number of subdivisions per axis.
pub const MIN_GRID_COUNT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Interval,
    Rectangle,
}

/// An interval `(0, L)` or a rectangle `(0, L1) x (0, L2)` with a uniform
/// interior grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteDomain {
    kind: DomainKind,
    lengths: [f64; 2],
    grid_counts: [usize; 2],
}

fn check_axis(length: f64, count: usize) -> Result<()> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidDomain(format!(
            "side length must be positive and finite, got {length}"
        )));
    }
    if count < MIN_GRID_COUNT {
        return Err(Error::InvalidDomain(format!(
            "grid count must be at least {MIN_GRID_COUNT}, got {count}"
        )));
    }
    Ok(())
}

impl DiscreteDomain {
    pub fn interval(length: f64, n: usize) -> Result<Self> {
        check_axis(length, n)?;
        Ok(Self {
            kind: DomainKind::Interval,
            lengths: [length, 0.0],
            grid_counts: [n, 0],
        })
    }

    pub fn rectangle(l1: f64, l2: f64, n1: usize, n2: usize) -> Result<Self> {
        check_axis(l1, n1)?;
        check_axis(l2, n2)?;
        Ok(Self {
            kind: DomainKind::Rectangle,
            lengths: [l1, l2],
            grid_counts: [n1, n2],
        })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            DomainKind::Interval => 1,
            DomainKind::Rectangle => 2,
        }
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths[..self.dimension()]
    }

    pub fn grid_counts(&self) -> &[usize] {
        &self.grid_counts[..self.dimension()]
    }

    /// Grid spacing `L / N` along `axis`.
    pub fn spacing(&self, axis: usize) -> f64 {
        self.lengths[axis] / self.grid_counts[axis] as f64
    }

    /// Number of interior nodes along `axis` (`N - 1`).
    pub fn interior_count(&self, axis: usize) -> usize {
        self.grid_counts[axis] - 1
    }

    pub fn node_count(&self) -> usize {
        (0..self.dimension()).map(|a| self.interior_count(a)).product()
    }

    /// Quadrature weight attached to every interior node.
    pub fn quadrature_weight(&self) -> f64 {
        (0..self.dimension()).map(|a| self.spacing(a)).product()
    }

    /// Lebesgue measure of the domain.
    pub fn measure(&self) -> f64 {
        self.lengths().iter().product()
    }

    /// Zero-based per-axis grid position of a flat node index. Nodes are
    /// stored row-major with axis 0 slowest.
    pub fn node_position(&self, index: usize) -> [usize; 2] {
        match self.kind {
            DomainKind::Interval => [index, 0],
            DomainKind::Rectangle => {
                let n1 = self.interior_count(1);
                [index / n1, index % n1]
            }
        }
    }

    pub fn node_index(&self, position: [usize; 2]) -> usize {
        match self.kind {
            DomainKind::Interval => position[0],
            DomainKind::Rectangle => position[0] * self.interior_count(1) + position[1],
        }
    }

    /// Physical coordinates of a node; the second entry is zero on intervals.
    pub fn node_coordinates(&self, index: usize) -> [f64; 2] {
        let pos = self.node_position(index);
        let mut x = [0.0; 2];
        for (axis, xi) in x.iter_mut().enumerate().take(self.dimension()) {
            *xi = (pos[axis] + 1) as f64 * self.spacing(axis);
        }
        x
    }

    /// Smallest Dirichlet eigenvalue, `sum_i (pi / L_i)^2`.
    pub fn first_eigenvalue(&self) -> f64 {
        self.lengths().iter().map(|l| (PI / l).powi(2)).sum()
    }
}

impl Serialize for DiscreteDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Lengths<'a>(&'a [f64]);
        impl Serialize for Lengths<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serial::slice_sig17(self.0, s)
            }
        }
        let mut st = s.serialize_struct("DiscreteDomain", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("lengths", &Lengths(self.lengths()))?;
        st.serialize_field("grid_counts", self.grid_counts())?;
        st.end()
    }
}

/// Pointwise samples of a function on the interior grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    domain: DiscreteDomain,
    values: Vec<f64>,
}

impl GridFn {
    pub fn new(domain: DiscreteDomain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.node_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} grid values, got {}",
                domain.node_count(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite grid value {bad}")));
        }
        Ok(Self { domain, values })
    }

    pub fn zeros(domain: DiscreteDomain) -> Self {
        Self {
            domain,
            values: vec![0.0; domain.node_count()],
        }
    }

    /// Samples `f` at every interior node.
    pub fn from_fn(domain: DiscreteDomain, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let dim = domain.dimension();
        let values = (0..domain.node_count())
            .map(|i| f(&domain.node_coordinates(i)[..dim]))
            .collect();
        Self::new(domain, values)
    }

    /// Values that are known to be finite and correctly sized.
    pub(crate) fn from_raw(domain: DiscreteDomain, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), domain.node_count());
        Self { domain, values }
    }

    pub fn domain(&self) -> &DiscreteDomain {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_raw(self.domain, self.values.iter().map(|v| c * v).collect())
    }

    /// Sup-norm of `self - other`.
    pub fn max_abs_diff(&self, other: &GridFn) -> Result<f64> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

impl Serialize for GridFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serial::slice_sig17(&self.values, s)
    }
}

/// Discrete L2 pairing `sum_i u_i w_i * weight`.
pub fn inner_product(u: &GridFn, w: &GridFn) -> Result<f64> {
    if u.domain != w.domain {
        return Err(Error::DomainMismatch);
    }
    let dot: f64 = u.values.iter().zip(&w.values).map(|(a, b)| a * b).sum();
    Ok(dot * u.domain.quadrature_weight())
}

/// Distance of every interior node to the boundary.
pub fn boundary_distance(domain: &DiscreteDomain) -> GridFn {
    let dim = domain.dimension();
    let values = (0..domain.node_count())
        .map(|i| {
            // count steps to the nearer face so mirror nodes get identical values
            let pos = domain.node_position(i);
            (0..dim)
                .map(|a| {
                    let steps = (pos[a] + 1).min(domain.grid_counts[a] - pos[a] - 1);
                    steps as f64 * domain.spacing(a)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    GridFn::from_raw(*domain, values)
}

/// Mirror image of `u` across the midline perpendicular to `axis`.
pub fn reflect(u: &GridFn, axis: usize) -> Result<GridFn> {
    let domain = u.domain;
    if axis >= domain.dimension() {
        return Err(Error::AxisOutOfRange {
            axis,
            dimension: domain.dimension(),
        });
    }
    let last = domain.interior_count(axis) - 1;
    let values = (0..domain.node_count())
        .map(|i| {
            let mut pos = domain.node_position(i);
            pos[axis] = last - pos[axis];
            u.values[domain.node_index(pos)]
        })
        .collect();
    Ok(GridFn::from_raw(domain, values))
}

/// Centered second-difference approximation of `-Δu` with zero Dirichlet
/// data outside the interior grid.
pub fn neg_laplacian_fd(u: &GridFn) -> GridFn {
    let domain = u.domain;
    let dim = domain.dimension();
    let mut out = vec![0.0; domain.node_count()];
    for (i, o) in out.iter_mut().enumerate() {
        let pos = domain.node_position(i);
        let center = u.values[i];
        for axis in 0..dim {
            let h2 = domain.spacing(axis).powi(2);
            let neighbour = |delta: isize| -> f64 {
                let p = pos[axis] as isize + delta;
                if p < 0 || p as usize >= domain.interior_count(axis) {
                    0.0
                } else {
                    let mut q = pos;
                    q[axis] = p as usize;
                    u.values[domain.node_index(q)]
                }
            };
            *o += (2.0 * center - neighbour(-1) - neighbour(1)) / h2;
        }
    }
    GridFn::from_raw(domain, out)
}

/// `sin(pi * m / n)` with exact argument reduction into `[0, pi/2]`, so that
/// sampled modes are exactly (anti)symmetric under grid reflection.
fn sin_pi_frac(m: usize, n: usize) -> f64 {
    let mut m = m % (2 * n);
    let mut sign = 1.0;
    if m >= n {
        m -= n;
        sign = -1.0;
    }
    if 2 * m > n {
        m = n - m;
    }
    sign * (PI * m as f64 / n as f64).sin()
}

/// Ordered Dirichlet eigenpairs sampled on the grid.
#[derive(Debug, Clone)]
pub struct EigenBasis {
    domain: DiscreteDomain,
    lambdas: Vec<f64>,
    sqrt_lambdas: Vec<f64>,
    indices: Vec<[usize; 2]>,
    modes: Vec<GridFn>,
}

/// Eigenvalues closer than this (relative) are treated as one multiplicity
/// class and ordered lexicographically by mode index.
const TIE_TOLERANCE: f64 = 1e-12;

fn axis_eigenvalue(index: usize, length: f64) -> f64 {
    (index as f64 * PI / length).powi(2)
}

/// The first `k` Dirichlet eigenpairs of `domain`.
///
/// Rectangle modes are tensor products ordered by eigenvalue, ties broken by
/// the lexicographic order of `(j, k)`. On intervals the second index is 0.
pub fn eigenpairs(domain: &DiscreteDomain, k: usize) -> Result<EigenBasis> {
    if k == 0 {
        return Err(Error::InvalidArgument("mode count must be at least 1".into()));
    }
    let limit = domain.grid_counts().iter().copied().min().unwrap_or(0) - 1;
    if k > limit {
        return Err(Error::Aliasing { modes: k, limit });
    }

    let mut pairs: Vec<(f64, [usize; 2])> = match domain.kind {
        DomainKind::Interval => (1..=k)
            .map(|j| (axis_eigenvalue(j, domain.lengths[0]), [j, 0]))
            .collect(),
        DomainKind::Rectangle => {
            let mut all = Vec::with_capacity(k * k);
            for j in 1..=k {
                for l in 1..=k {
                    let lam = axis_eigenvalue(j, domain.lengths[0])
                        + axis_eigenvalue(l, domain.lengths[1]);
                    all.push((lam, [j, l]));
                }
            }
            all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            // Regroup near-equal eigenvalues so rounding cannot reorder a
            // multiplicity class.
            let mut start = 0;
            while start < all.len() {
                let mut end = start + 1;
                while end < all.len()
                    && (all[end].0 - all[start].0).abs() <= TIE_TOLERANCE * all[start].0
                {
                    end += 1;
                }
                all[start..end].sort_by_key(|e| e.1);
                start = end;
            }
            all.truncate(k);
            all
        }
    };
    pairs.truncate(k);

    let modes = pairs
        .iter()
        .map(|(_, idx)| sample_mode(domain, *idx))
        .collect();
    let lambdas: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    Ok(EigenBasis {
        domain: *domain,
        sqrt_lambdas: lambdas.iter().map(|l| l.sqrt()).collect(),
        lambdas,
        indices: pairs.into_iter().map(|p| p.1).collect(),
        modes,
    })
}

fn sample_mode(domain: &DiscreteDomain, idx: [usize; 2]) -> GridFn {
    let dim = domain.dimension();
    let norm: f64 = (0..dim).map(|a| (2.0 / domain.lengths[a]).sqrt()).product();
    let values = (0..domain.node_count())
        .map(|i| {
            let pos = domain.node_position(i);
            (0..dim)
                .map(|a| sin_pi_frac(idx[a] * (pos[a] + 1), domain.grid_counts[a]))
                .product::<f64>()
                * norm
        })
        .collect();
    GridFn::from_raw(*domain, values)
}

impl EigenBasis {
    pub fn domain(&self) -> &DiscreteDomain {
        &self.domain
    }

    /// Number of modes `K`.
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn sqrt_lambdas(&self) -> &[f64] {
        &self.sqrt_lambdas
    }

    /// Per-axis sine indices of each mode.
    pub fn indices(&self) -> &[[usize; 2]] {
        &self.indices
    }

    pub fn modes(&self) -> &[GridFn] {
        &self.modes
    }

    pub fn mode(&self, k: usize) -> &GridFn {
        &self.modes[k]
    }

    /// Largest sine index used along `axis`.
    pub fn max_axis_index(&self, axis: usize) -> usize {
        self.indices.iter().map(|i| i[axis]).max().unwrap_or(0)
    }

    /// Value of mode `k` at an arbitrary point of the closed domain.
    pub fn mode_value_at(&self, k: usize, x: &[f64]) -> f64 {
        let idx = self.indices[k];
        (0..self.domain.dimension())
            .map(|a| {
                let l = self.domain.lengths[a];
                (2.0 / l).sqrt() * (idx[a] as f64 * PI * x[a] / l).sin()
            })
            .product()
    }

    /// Gradient of mode `k` at an arbitrary point; unused entries are zero.
    pub fn mode_gradient_at(&self, k: usize, x: &[f64]) -> [f64; 2] {
        let idx = self.indices[k];
        let dim = self.domain.dimension();
        let mut value = [0.0; 2];
        let mut slope = [0.0; 2];
        for a in 0..dim {
            let l = self.domain.lengths[a];
            let freq = idx[a] as f64 * PI / l;
            let c = (2.0 / l).sqrt();
            value[a] = c * (freq * x[a]).sin();
            slope[a] = c * freq * (freq * x[a]).cos();
        }
        let mut grad = [0.0; 2];
        for a in 0..dim {
            grad[a] = (0..dim)
                .map(|b| if a == b { slope[b] } else { value[b] })
                .product();
        }
        grad
    }
}

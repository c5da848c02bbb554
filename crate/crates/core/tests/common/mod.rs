//! Independent oracles shared by the integration suites.
//!
//! Everything here is written against plain trigonometric sums and dense
//! matrices in grid space; none of it goes through the crate's basis or
//! coefficient-space operators.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Samples of `sqrt(2/L) sin(kπx/L)` for `k = 1..=modes` on the interior
/// nodes of `(0, L)` split into `n` cells.
pub fn sine_table(length: f64, n: usize, modes: usize) -> Vec<Vec<f64>> {
    let h = length / n as f64;
    (1..=modes)
        .map(|k| {
            (1..n)
                .map(|i| (2.0 / length).sqrt() * (k as f64 * PI * i as f64 * h / length).sin())
                .collect()
        })
        .collect()
}

/// Dense grid-space matrix of `sum_k σ(λ_k) φ_k φ_kᵀ h` on `(0, L)`.
pub fn dense_spectral_matrix(
    length: f64,
    n: usize,
    modes: usize,
    symbol: impl Fn(f64) -> f64,
) -> Vec<Vec<f64>> {
    let h = length / n as f64;
    let table = sine_table(length, n, modes);
    let m = n - 1;
    let mut out = vec![vec![0.0; m]; m];
    for (k, phi) in table.iter().enumerate() {
        let lambda = ((k + 1) as f64 * PI / length).powi(2);
        let w = symbol(lambda) * h;
        for i in 0..m {
            for j in 0..m {
                out[i][j] += w * phi[i] * phi[j];
            }
        }
    }
    out
}

pub fn matvec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

/// Constrained-minimum energy `I0` for `A^(1/2) u = u^p` on `(0, 1)` with the
/// full sine basis of an `n`-cell grid, by a normalized fixed-point iteration
/// in grid space on dense matrices.
pub fn dense_fixed_point_i0(n: usize, p: f64) -> f64 {
    let h = 1.0 / n as f64;
    let modes = n - 1;
    let a = dense_spectral_matrix(1.0, n, modes, f64::sqrt);
    let b = dense_spectral_matrix(1.0, n, modes, |l| 1.0 / l.sqrt());
    let mut u: Vec<f64> = (1..n).map(|i| (PI * i as f64 * h).sin()).collect();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() * h;
    for _ in 0..1000 {
        let up: Vec<f64> = u.iter().map(|v| v.max(0.0).powf(p)).collect();
        let au = matvec(&a, &u);
        let m = dot(&au, &u) / dot(&up, &u);
        let next: Vec<f64> = matvec(&b, &up)
            .iter()
            .map(|v| m.powf(p / (p - 1.0)) * v)
            .collect();
        let change = next
            .iter()
            .zip(&u)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
        u = next;
        if change < 1e-14 {
            break;
        }
    }
    let au = matvec(&a, &u);
    let norm = (u.iter().map(|v| v.abs().powf(p + 1.0)).sum::<f64>() * h).powf(1.0 / (p + 1.0));
    dot(&au, &u) / (norm * norm)
}

/// `I0` of the dense oracle at `n = 64` (full 63-mode basis), `p = 2`.
/// Frozen from [`dense_fixed_point_i0`]; an independent numpy run of the same
/// iteration gave 2.7142243775270596.
pub const REFERENCE_I0_P2: f64 = 2.714_224_377_527_06;

/// Deterministic pseudo-random coefficients in `[-1, 1)` (SplitMix64).
pub struct Coeffs(u64);

impl Coeffs {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| 2.0 * self.next_f64() - 1.0).collect()
    }
}

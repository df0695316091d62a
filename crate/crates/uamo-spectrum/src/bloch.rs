use faer::Mat;
use num_complex::Complex64 as C64;
use uamo_core::{CouplingPair, Frequency, Result, UamoError};
use uamo_walk::periodic_matrix;

use crate::bandset::wrap_angle;

/// The walk on one period with quasi-momentum `k`.
///
/// Acts on sequences with `ψ_{n+q} = e^{ik}ψ_n` through their values on
/// sites `0..q` (basis ordering `δ₀⁺, δ₀⁻, δ₁⁺, …`).
#[derive(Debug, Clone)]
pub struct BlochMatrix {
    pub k: f64,
    pub matrix: Mat<C64>,
}

impl BlochMatrix {
    /// `2q`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |(B*B − I)_{jk}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.matrix.adjoint() * &self.matrix;
        let mut r: f64 = 0.0;
        for i in 0..p.nrows() {
            for j in 0..p.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((p[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        r
    }

    /// Eigenvalues `e^{iω}` as angles `ω ∈ [0, 2π)`, sorted.
    pub fn eigenangles(&self) -> Result<Vec<f64>> {
        let ev = self
            .matrix
            .eigenvalues()
            .map_err(|e| UamoError::NonConvergence(format!("Bloch eigensolver: {e:?}")))?;
        let mut w: Vec<f64> = ev.iter().map(|z| wrap_angle(z.arg())).collect();
        w.sort_by(f64::total_cmp);
        Ok(w)
    }
}

/// Bloch matrix of the period-`q` walk with rational frequency `p/q`.
pub fn bloch_matrix(pair: &CouplingPair, freq: &Frequency, theta: f64, k: f64) -> Result<BlochMatrix> {
    let q = freq
        .period()
        .ok_or_else(|| UamoError::invalid("Bloch reduction needs a rational frequency"))?;
    Ok(BlochMatrix { k: wrap_angle(k), matrix: periodic_matrix(pair, freq, theta, q as usize, k)? })
}

/// Eigenangles of the Bloch matrix at quasi-momentum `k`.
pub fn bloch_eigenangles(pair: &CouplingPair, freq: &Frequency, theta: f64, k: f64) -> Result<Vec<f64>> {
    bloch_matrix(pair, freq, theta, k)?.eigenangles()
}

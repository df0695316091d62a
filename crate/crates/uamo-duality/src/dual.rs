use num_complex::Complex64 as C64;
use uamo_core::io::{Cell, CsvTable};
use uamo_core::{CouplingPair, Frequency, Result, UamoError, TAU};
use uamo_walk::{walk_transpose_apply, SpinorField};

/// `(1/√2)[[1, i], [i, 1]]`.
pub fn dual_rotation() -> [[C64; 2]; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [[C64::new(h, 0.0), C64::new(0.0, h)], [C64::new(0.0, h), C64::new(h, 0.0)]]
}

/// The sequence `φ_m = (1/√2) e^{2πimθ} [[1, i], [i, 1]] ψ̌(mΦ + ξ)` on a
/// finite range of `m`.
#[derive(Debug, Clone)]
pub struct DualSolution {
    pub xi: f64,
    pub phi: SpinorField,
}

fn unit(frac: f64) -> C64 {
    C64::from_polar(1.0, TAU * frac)
}

/// Builds the dual sequence on `m_lo ..= m_hi` from the finitely supported
/// `psi`. The phase `n(mΦ + ξ)` is reduced mod 1 through `nm·Φ` so that the
/// rational case is exact.
pub fn dual_solution(psi: &SpinorField, theta: f64, freq: &Frequency, xi: f64, m_lo: i64, m_hi: i64) -> Result<DualSolution> {
    if m_hi < m_lo {
        return Err(UamoError::invalid("empty dual range"));
    }
    let r = dual_rotation();
    let len = (m_hi - m_lo + 1) as usize;
    let mut plus = Vec::with_capacity(len);
    let mut minus = Vec::with_capacity(len);
    for m in m_lo..=m_hi {
        let (mut hp, mut hm) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for n in psi.n_min()..=psi.n_max() {
            let (a, b) = psi.get(n);
            let e = unit(freq.orbit_fraction(n * m) + (n as f64 * xi).rem_euclid(1.0));
            hp += e * a;
            hm += e * b;
        }
        let g = unit((m as f64 * theta).rem_euclid(1.0));
        plus.push(g * (r[0][0] * hp + r[0][1] * hm));
        minus.push(g * (r[1][0] * hp + r[1][1] * hm));
    }
    Ok(DualSolution { xi, phi: SpinorField::from_components(m_lo, plus, minus)? })
}

/// Per-site residual `|(W♯φ)_m − zφ_m|` summarized over a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualResidual {
    pub max: f64,
    pub median: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Residual of `W♯φ = zφ` with `W♯ = W_{λ₂,λ₁,Φ,ξ}^⊤` over the sites
/// `window.0 ..= window.1`, which must lie strictly inside the constructed
/// range (rows of `W^⊤` reach one site to each side).
pub fn dual_residual(pair: &CouplingPair, z: C64, dual: &DualSolution, freq: &Frequency, window: (i64, i64)) -> Result<DualResidual> {
    let (lo, hi) = window;
    if lo > hi || lo <= dual.phi.n_min() || hi >= dual.phi.n_max() {
        return Err(UamoError::Window(format!(
            "window [{lo}, {hi}] must lie strictly inside the constructed range [{}, {}]",
            dual.phi.n_min(),
            dual.phi.n_max()
        )));
    }
    let image = walk_transpose_apply(&pair.swapped(), freq, dual.xi, &dual.phi);
    let per_site: Vec<f64> = (lo..=hi)
        .map(|m| {
            let (a, b) = image.get(m);
            let (p, q) = dual.phi.get(m);
            ((a - z * p).norm_sqr() + (b - z * q).norm_sqr()).sqrt()
        })
        .collect();
    Ok(DualResidual { max: per_site.iter().copied().fold(0.0, f64::max), median: median(per_site) })
}

/// `count` equispaced phases `j/count`.
pub fn xi_grid(count: usize) -> Vec<f64> {
    (0..count).map(|j| j as f64 / count as f64).collect()
}

/// One row of a duality sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityRow {
    pub xi: f64,
    pub residual_max: f64,
    pub residual_median: f64,
    pub tail_mass: f64,
}

/// Dual residuals of the eigenvector `psi` (eigenvalue `z`, tail mass
/// `tail_mass` discarded by truncation) for each `ξ`, over the window
/// `[−half_width, half_width]`.
#[allow(clippy::too_many_arguments)]
pub fn duality_sweep(
    pair: &CouplingPair,
    freq: &Frequency,
    theta: f64,
    z: C64,
    psi: &SpinorField,
    tail_mass: f64,
    xis: &[f64],
    half_width: i64,
) -> Result<Vec<DualityRow>> {
    xis.iter()
        .map(|&xi| {
            let dual = dual_solution(psi, theta, freq, xi, -half_width - 1, half_width + 1)?;
            let r = dual_residual(pair, z, &dual, freq, (-half_width, half_width))?;
            Ok(DualityRow { xi, residual_max: r.max, residual_median: r.median, tail_mass })
        })
        .collect()
}

/// Max over `ξ` of the per-`ξ` maxima and median over `ξ` of the per-`ξ`
/// medians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualitySummary {
    pub residual_max: f64,
    pub residual_median: f64,
}

pub fn summarize(rows: &[DualityRow]) -> DualitySummary {
    DualitySummary {
        residual_max: rows.iter().map(|r| r.residual_max).fold(0.0, f64::max),
        residual_median: median(rows.iter().map(|r| r.residual_median).collect()),
    }
}

/// Table with header `xi,residual_max,residual_median,tail_mass`.
pub fn duality_table(rows: &[DualityRow]) -> CsvTable {
    let mut t = CsvTable::new(&["xi", "residual_max", "residual_median", "tail_mass"]);
    for r in rows {
        t.push(vec![Cell::from(r.xi), r.residual_max.into(), r.residual_median.into(), r.tail_mass.into()]);
    }
    t
}

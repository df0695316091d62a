use num_complex::Complex64 as C64;
use uamo_core::io::{Cell, CsvTable};
use uamo_core::{CouplingPair, Frequency, Lambda0, Result, UamoError, TAU};

use crate::integral::epsilon0;
use crate::mat2::Mat2c;
use crate::variants::CocycleSpec;

/// Compensated (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// The ordered product `M(θ₀+(n−1)Φ) ⋯ M(θ₀+Φ) M(θ₀)` as `(P, log_scale)`
/// with the exact product equal to `P·e^{log_scale}`.
///
/// The running product is renormalized by its largest entry after every
/// factor, so `P` has largest entry 1 and operator norm in `[1, 2]`.
pub fn iterate(spec: &CocycleSpec, freq: &Frequency, theta0: f64, n: u64) -> Result<(Mat2c, f64)> {
    if n == 0 {
        return Err(UamoError::invalid("iterate needs n ≥ 1"));
    }
    let mut p = Mat2c::identity();
    let mut log_scale = KahanSum::default();
    for j in 0..n as i64 {
        p = spec.eval_orbit(freq, j, theta0)? * p;
        let r = p.max_abs();
        if r == 0.0 {
            return Err(UamoError::singular("cocycle product vanished"));
        }
        p = p.scale(C64::new(1.0 / r, 0.0));
        log_scale.add(r.ln());
    }
    Ok((p, log_scale.value()))
}

/// A Lyapunov exponent estimate with its block standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEstimate {
    pub value: f64,
    pub stderr: f64,
    pub steps: u64,
}

/// Number of blocks used for the standard error.
pub const LYAPUNOV_BLOCKS: u64 = 16;

/// Smallest accepted `N` for [`lyapunov_estimate`].
pub const MIN_LYAPUNOV_STEPS: u64 = 10_000;

/// Estimates `L = lim (1/N) log‖M^N(θ₀)v‖` along the orbit of `θ₀`.
///
/// The first `burn_in` steps align the vector with the expanding direction
/// and are discarded; the next `n` steps are split into
/// [`LYAPUNOV_BLOCKS`] blocks whose growth rates give the standard error.
pub fn lyapunov_estimate(
    spec: &CocycleSpec,
    freq: &Frequency,
    n: u64,
    theta0: f64,
    burn_in: u64,
) -> Result<LyapunovEstimate> {
    if n < MIN_LYAPUNOV_STEPS {
        return Err(UamoError::invalid(format!("Lyapunov estimates need N ≥ {MIN_LYAPUNOV_STEPS}, got {n}")));
    }
    let mut v = [C64::new(0.6, 0.0), C64::new(0.48, 0.64)];
    let step = |j: i64, v: &mut [C64; 2]| -> Result<f64> {
        let w = spec.eval_orbit(freq, j, theta0)?.apply(*v);
        let r = w[0].norm().max(w[1].norm());
        if r == 0.0 {
            return Err(UamoError::singular("cocycle annihilated the test vector"));
        }
        *v = [w[0] / r, w[1] / r];
        Ok(r.ln())
    };
    for j in 0..burn_in as i64 {
        step(j, &mut v)?;
    }
    let start_norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt().ln();
    let block = n / LYAPUNOV_BLOCKS;
    let mut total = KahanSum::default();
    let mut rates = Vec::with_capacity(LYAPUNOV_BLOCKS as usize);
    let mut j = burn_in as i64;
    let mut prev_norm = start_norm;
    for b in 0..LYAPUNOV_BLOCKS {
        let len = if b + 1 == LYAPUNOV_BLOCKS { n - block * (LYAPUNOV_BLOCKS - 1) } else { block };
        let mut acc = KahanSum::default();
        for _ in 0..len {
            acc.add(step(j, &mut v)?);
            j += 1;
        }
        let end_norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt().ln();
        let growth = acc.value() + end_norm - prev_norm;
        prev_norm = end_norm;
        total.add(growth);
        rates.push(growth / len as f64);
    }
    let value = total.value() / n as f64;
    let mean = rates.iter().sum::<f64>() / rates.len() as f64;
    let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (rates.len() - 1) as f64;
    Ok(LyapunovEstimate { value, stderr: (var / rates.len() as f64).sqrt(), steps: n })
}

/// `max{0, log λ₀}`, the Lyapunov exponent on the spectrum.
pub fn lyapunov_exact(pair: &CouplingPair) -> Result<f64> {
    match pair.lambda0() {
        Lambda0::Finite(l0) if pair.lambda1() > 0.0 => Ok(if l0 > 0.0 { l0.ln().max(0.0) } else { 0.0 }),
        _ => Err(UamoError::invalid("the Lyapunov exponent is undefined for λ₁ = 0")),
    }
}

/// Spectral radius of `[[2λ′, −λ], [−λ, 0]]`, whose eigenvalues are `λ′ ± 1`.
pub fn herman_spectral_radius(lambda: f64) -> f64 {
    let lp = ((1.0 - lambda) * (1.0 + lambda)).max(0.0).sqrt();
    // Eigenvalues of [[p, r], [r, 0]] are p/2 ± √(p²/4 + r²).
    let half = lp;
    half.abs() + (half * half + lambda * lambda).sqrt()
}

/// Lyapunov estimates on a set of spectral parameters, compared with the
/// lower bound `log λ₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermanReport {
    pub bound: f64,
    pub estimates: Vec<(C64, LyapunovEstimate)>,
    /// `min_z (L(z) − log λ₀)`.
    pub worst_margin: f64,
}

/// Evaluates `L(z) − log λ₀` on `z_grid` (with the B cocycle, which shares
/// its exponent with A on real phases).
pub fn herman_check(pair: &CouplingPair, freq: &Frequency, z_grid: &[C64], n: u64, theta0: f64) -> Result<HermanReport> {
    let bound = pair
        .lambda0()
        .ln()
        .filter(|_| pair.lambda1() > 0.0)
        .ok_or_else(|| UamoError::invalid("the Herman bound needs λ₁, λ₂ > 0"))?;
    let mut estimates = Vec::with_capacity(z_grid.len());
    let mut worst_margin = f64::INFINITY;
    for &z in z_grid {
        let spec = CocycleSpec::new("B", *pair, z, 0.0)?;
        let est = lyapunov_estimate(&spec, freq, n, theta0, n / 10)?;
        worst_margin = worst_margin.min(est.value - bound);
        estimates.push((z, est));
    }
    Ok(HermanReport { bound, estimates, worst_margin })
}

/// One row of `lyapunov.csv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovRow {
    pub z_angle: f64,
    pub epsilon: f64,
    pub estimate: LyapunovEstimate,
}

/// Table with header `z_angle,epsilon,L,stderr`.
pub fn lyapunov_table(rows: &[LyapunovRow]) -> CsvTable {
    let mut table = CsvTable::new(&["z_angle", "epsilon", "L", "stderr"]);
    for r in rows {
        table.push(vec![
            Cell::from(r.z_angle),
            Cell::from(r.epsilon),
            Cell::from(r.estimate.value),
            Cell::from(r.estimate.stderr),
        ]);
    }
    table
}

/// Default `ε` grid: 41 equispaced points on `[−0.35, 0.35]` plus
/// `±ε₀ ± 0.004` (when inside the range); never contains `±ε₀` itself.
pub fn default_epsilon_grid(lambda2: f64) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..41).map(|k| -0.35 + 0.0175 * k as f64).collect();
    grid[20] = 0.0;
    let e0 = epsilon0(lambda2);
    if e0.is_finite() {
        for d in [-0.004, 0.004] {
            let e = e0 + d;
            if e > 0.0 && e < 0.35 {
                grid.push(e);
                grid.push(-e);
            }
        }
    }
    grid.retain(|e| !e0.is_finite() || (e.abs() - e0).abs() > 1e-9);
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    grid
}

/// A maximal run of grid points on which `ε ↦ L` is affine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineSegment {
    /// Index of the first and last grid point of the run.
    pub first: usize,
    pub last: usize,
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation from the fitted line.
    pub residual: f64,
}

impl AffineSegment {
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `slope/2π`, the acceleration on this piece.
    pub fn acceleration(&self) -> f64 {
        self.slope / TAU
    }

    /// Nearest integer to the acceleration.
    pub fn omega(&self) -> i64 {
        self.acceleration().round() as i64
    }

    /// Distance of the acceleration from the nearest integer.
    pub fn quantization_error(&self) -> f64 {
        (self.acceleration() - self.acceleration().round()).abs()
    }
}

/// Sampled map `ε ↦ L(Φ, M, ε)` with its piecewise-affine fit.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovProfile {
    pub epsilons: Vec<f64>,
    pub l_values: Vec<f64>,
    pub stderr: Vec<f64>,
    pub segments: Vec<AffineSegment>,
}

/// Affine residual threshold for growing a segment.
pub const AFFINE_TOL: f64 = 1e-3;

/// Segments shorter than this are treated as kink artifacts.
pub const MIN_SEGMENT_POINTS: usize = 3;

impl LyapunovProfile {
    /// Segments with at least [`MIN_SEGMENT_POINTS`] points.
    pub fn fitted_segments(&self) -> impl Iterator<Item = &AffineSegment> {
        self.segments.iter().filter(|s| s.len() >= MIN_SEGMENT_POINTS)
    }

    /// Largest `|L(ε) − L(−ε)|` over mirrored grid points.
    pub fn asymmetry(&self) -> Result<f64> {
        let n = self.epsilons.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let j = n - 1 - i;
            if (self.epsilons[i] + self.epsilons[j]).abs() > 1e-12 {
                return Err(UamoError::invalid("ε grid is not symmetric about 0"));
            }
            worst = worst.max((self.l_values[i] - self.l_values[j]).abs());
        }
        Ok(worst)
    }

    /// True when fitted slopes never decrease from left to right (up to `tol`).
    pub fn is_convex(&self, tol: f64) -> bool {
        let slopes: Vec<f64> = self.fitted_segments().map(|s| s.slope).collect();
        slopes.windows(2).all(|w| w[1] >= w[0] - tol)
    }

    /// Largest distance of a fitted acceleration from an integer.
    pub fn max_quantization_error(&self) -> f64 {
        self.fitted_segments().map(|s| s.quantization_error()).fold(0.0, f64::max)
    }

    /// Segment containing grid point `i`.
    pub fn segment_of(&self, i: usize) -> Option<&AffineSegment> {
        self.segments.iter().find(|s| s.first <= i && i <= s.last)
    }

    /// Table with header `epsilon,L,slope,omega`; `slope` and `omega` come
    /// from the fitted segment containing each point (empty `omega` and
    /// `nan` slope for kink artifacts).
    pub fn to_csv(&self) -> CsvTable {
        let mut table = CsvTable::new(&["epsilon", "L", "slope", "omega"]);
        for i in 0..self.epsilons.len() {
            let seg = self.segment_of(i).filter(|s| s.len() >= MIN_SEGMENT_POINTS);
            table.push(vec![
                Cell::from(self.epsilons[i]),
                Cell::from(self.l_values[i]),
                Cell::from(seg.map_or(f64::NAN, |s| s.slope)),
                Cell::from(seg.map(|s| s.omega())),
            ]);
        }
        table
    }
}

fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    if x.len() == 1 {
        return (f64::NAN, y[0], 0.0);
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).abs()).fold(0.0, f64::max);
    (slope, intercept, residual)
}

/// Greedy decomposition of the samples into maximal runs whose least-squares
/// line stays within `tol` of every point.
pub fn fit_affine_segments(x: &[f64], y: &[f64], tol: f64) -> Vec<AffineSegment> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < x.len() {
        let mut j = i;
        while j + 1 < x.len() && line_fit(&x[i..=j + 1], &y[i..=j + 1]).2 < tol {
            j += 1;
        }
        let (slope, intercept, residual) = line_fit(&x[i..=j], &y[i..=j]);
        out.push(AffineSegment { first: i, last: j, slope, intercept, residual });
        i = j + 1;
    }
    out
}

/// Samples `ε ↦ L(Φ, M, ε)` for the variant of `spec` on `eps_grid` with `n`
/// steps per point (burn-in `n/10`) and fits affine pieces.
pub fn acceleration_profile(
    spec: &CocycleSpec,
    freq: &Frequency,
    eps_grid: &[f64],
    n: u64,
    theta0: f64,
) -> Result<LyapunovProfile> {
    if eps_grid.is_empty() || eps_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(UamoError::invalid("ε grid must be non-empty and strictly increasing"));
    }
    let mut l_values = Vec::with_capacity(eps_grid.len());
    let mut stderr = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let est = lyapunov_estimate(&spec.with_epsilon(eps), freq, n, theta0, n / 10)?;
        l_values.push(est.value);
        stderr.push(est.stderr);
    }
    let segments = fit_affine_segments(eps_grid, &l_values, AFFINE_TOL);
    Ok(LyapunovProfile { epsilons: eps_grid.to_vec(), l_values, stderr, segments })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn herman_matrix_radius() {
        for l in [0.1f64, 0.5, 0.9, 1.0] {
            let lp = (1.0 - l * l).sqrt();
            assert!((herman_spectral_radius(l) - (1.0 + lp)).abs() < 1e-14);
        }
    }

    #[test]
    fn segments_of_abs() {
        let x: Vec<f64> = (-10..=10).map(|k| k as f64 * 0.01).collect();
        let y: Vec<f64> = x.iter().map(|e| TAU * e.abs()).collect();
        let segs = fit_affine_segments(&x, &y, 1e-3);
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].omega(), -1);
        assert_eq!(segs[1].omega(), 1);
        assert!(segs.iter().all(|s| s.quantization_error() < 1e-12));
    }

    #[test]
    fn exact_exponent() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let sup = CouplingPair::new(0.5, s).unwrap();
        assert!((lyapunov_exact(&sup).unwrap() - 0.435_584_309_9).abs() < 1e-9);
        assert_eq!(lyapunov_exact(&CouplingPair::new(s, 0.5).unwrap()).unwrap(), 0.0);
        assert_eq!(lyapunov_exact(&CouplingPair::new(0.3, 0.3).unwrap()).unwrap(), 0.0);
        assert!(lyapunov_exact(&CouplingPair::new(0.0, 0.3).unwrap()).is_err());
    }

    #[test]
    fn default_grid_is_symmetric() {
        let g = default_epsilon_grid(std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(g.len(), 45);
        for i in 0..g.len() {
            assert!((g[i] + g[g.len() - 1 - i]).abs() < 1e-12);
        }
        assert_eq!(default_epsilon_grid(0.0).len(), 41);
    }
}

use num_complex::Complex64 as C64;
use uamo_core::io::{Cell, CsvTable};
use uamo_core::{CouplingPair, Frequency, Result, UamoError};

use crate::field::SpinorField;
use crate::operator::coin;

/// Position moments of `W^t ψ₀` for `t = 0, 1, …, T`.
///
/// `mean` and `sigma2` use the position observable `n` with weights
/// `p_n = |ψ_n⁺|² + |ψ_n⁻|²` (normalized by the total weight); `norm` is
/// `‖W^t ψ₀‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    pub t: Vec<u64>,
    pub norm: Vec<f64>,
    pub mean: Vec<f64>,
    pub sigma2: Vec<f64>,
}

impl MomentSeries {
    /// Largest deviation of the norm from its initial value.
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.norm[0];
        self.norm.iter().map(|n| (n - n0).abs()).fold(0.0, f64::max)
    }

    /// `σ(t) = √sigma2(t)`.
    pub fn sigma(&self) -> Vec<f64> {
        self.sigma2.iter().map(|s| s.max(0.0).sqrt()).collect()
    }

    /// Table with header `t,norm,mean,sigma2`.
    pub fn to_csv(&self) -> CsvTable {
        let mut table = CsvTable::new(&["t", "norm", "mean", "sigma2"]);
        for i in 0..self.t.len() {
            table.push(vec![
                Cell::from(self.t[i]),
                Cell::from(self.norm[i]),
                Cell::from(self.mean[i]),
                Cell::from(self.sigma2[i]),
            ]);
        }
        table
    }
}

/// Evolves `ψ₀` for `steps` steps and records the position moments.
///
/// The working window is the support of `ψ₀` widened by `steps + 1` sites
/// each side, which contains the exact light cone, so no amplitude is ever
/// lost at a boundary.
pub fn evolve(pair: &CouplingPair, freq: &Frequency, theta: f64, psi0: &SpinorField, steps: u64) -> Result<MomentSeries> {
    evolve_state(pair, freq, theta, psi0, steps).map(|(series, _)| series)
}

/// Like [`evolve`], also returning `W^T ψ₀`.
pub fn evolve_state(
    pair: &CouplingPair,
    freq: &Frequency,
    theta: f64,
    psi0: &SpinorField,
    steps: u64,
) -> Result<(MomentSeries, SpinorField)> {
    if steps == 0 {
        return Err(UamoError::invalid("steps must be at least 1"));
    }
    let (lo, hi) = psi0
        .support()
        .ok_or_else(|| UamoError::invalid("initial state is the zero vector"))?;
    let reach = steps as i64 + 1;
    evolve_in_window(pair, freq, theta, psi0, steps, (lo - reach, hi + reach))
}

/// Evolution on an explicit window `[w_lo, w_hi]`.
///
/// Refuses windows that do not contain the light cone
/// `[lo − steps − 1, hi + steps + 1]` of the support `[lo, hi]` of `ψ₀`:
/// a smaller window would silently truncate the state.
pub fn evolve_in_window(
    pair: &CouplingPair,
    freq: &Frequency,
    theta: f64,
    psi0: &SpinorField,
    steps: u64,
    window: (i64, i64),
) -> Result<(MomentSeries, SpinorField)> {
    let (lo, hi) = psi0
        .support()
        .ok_or_else(|| UamoError::invalid("initial state is the zero vector"))?;
    let reach = steps as i64 + 1;
    let (w_lo, w_hi) = window;
    if w_lo > lo - reach || w_hi < hi + reach {
        return Err(UamoError::Window(format!(
            "window [{w_lo}, {w_hi}] does not contain the light cone [{}, {}]",
            lo - reach,
            hi + reach
        )));
    }
    let mut psi = psi0.restricted(w_lo, w_hi)?;
    let coins: Vec<_> = (w_lo..=w_hi).map(|n| coin(pair, freq, theta, n)).collect();
    let (l, lp) = (pair.lambda1(), pair.lambda1p());
    let zero = C64::new(0.0, 0.0);
    let len = psi.len();
    let mut tmp_p = vec![zero; len];
    let mut tmp_m = vec![zero; len];

    let mut series = MomentSeries { t: Vec::new(), norm: Vec::new(), mean: Vec::new(), sigma2: Vec::new() };
    let mut a = (lo - w_lo) as usize;
    let mut b = (hi - w_lo) as usize;
    record(&mut series, 0, &psi, w_lo, a, b);
    for t in 1..=steps {
        {
            let (plus, minus) = (psi.plus(), psi.minus());
            for i in a..=b {
                let (x, y) = coins[i].apply(plus[i], minus[i]);
                tmp_p[i] = x;
                tmp_m[i] = y;
            }
        }
        a -= 1;
        b += 1;
        tmp_p[a] = zero;
        tmp_m[a] = zero;
        tmp_p[b] = zero;
        tmp_m[b] = zero;
        {
            let plus = psi.plus_mut();
            for i in a..=b {
                let from_left = if i > a { tmp_p[i - 1] } else { zero };
                plus[i] = l * from_left - lp * tmp_m[i];
            }
        }
        {
            let minus = psi.minus_mut();
            for i in a..=b {
                let from_right = if i < b { tmp_m[i + 1] } else { zero };
                minus[i] = l * from_right + lp * tmp_p[i];
            }
        }
        record(&mut series, t, &psi, w_lo, a, b);
    }
    Ok((series, psi))
}

fn record(series: &mut MomentSeries, t: u64, psi: &SpinorField, w_lo: i64, a: usize, b: usize) {
    let (plus, minus) = (psi.plus(), psi.minus());
    let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for i in a..=b {
        let p = plus[i].norm_sqr() + minus[i].norm_sqr();
        let n = (w_lo + i as i64) as f64;
        m0 += p;
        m1 += p * n;
        m2 += p * n * n;
    }
    let mean = m1 / m0;
    series.t.push(t);
    series.norm.push(m0.sqrt());
    series.mean.push(mean);
    series.sigma2.push((m2 / m0 - mean * mean).max(0.0));
}

/// Least-squares power law `σ(t) ≈ C·t^slope`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub points: usize,
}

/// Fits `log σ` against `log t` on the steps `t_lo ≤ t ≤ t_hi`.
///
/// Errors when the window is degenerate or `σ` vanishes on it (for example
/// deterministic ballistic motion, where the spread is identically zero).
pub fn scaling_exponent(series: &MomentSeries, t_lo: u64, t_hi: u64) -> Result<PowerLawFit> {
    if t_lo < 1 || t_hi <= t_lo {
        return Err(UamoError::invalid("fit window must satisfy 1 ≤ t_lo < t_hi"));
    }
    let sigma = series.sigma();
    let pts: Vec<(f64, f64)> = series
        .t
        .iter()
        .zip(&sigma)
        .filter(|(t, _)| (t_lo..=t_hi).contains(*t))
        .map(|(&t, &s)| (t as f64, s))
        .collect();
    if pts.len() < 3 {
        return Err(UamoError::invalid("fewer than three samples in the fit window"));
    }
    if pts.iter().all(|&(_, s)| s == 0.0) {
        return Err(UamoError::invalid("zero variance on the fit window (deterministic motion)"));
    }
    if pts.iter().any(|&(_, s)| s <= 0.0) {
        return Err(UamoError::invalid("σ vanishes somewhere on the fit window"));
    }
    let xy: Vec<(f64, f64)> = pts.iter().map(|&(t, s)| (t.ln(), s.ln())).collect();
    let (slope, intercept, stderr) = linear_fit(&xy);
    Ok(PowerLawFit { slope, intercept, stderr, points: xy.len() })
}

/// Ordinary least squares `y ≈ intercept + slope·x`; returns the slope's
/// standard error as third component.
fn linear_fit(xy: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xy.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = if xy.len() > 2 { (ssr / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    (slope, intercept, stderr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Spin;

    fn series_from_sigma(f: impl Fn(f64) -> f64, n: u64) -> MomentSeries {
        let t: Vec<u64> = (0..=n).collect();
        let sigma2 = t.iter().map(|&t| f(t as f64).powi(2)).collect();
        MomentSeries { norm: vec![1.0; t.len()], mean: vec![0.0; t.len()], sigma2, t }
    }

    #[test]
    fn exact_power_laws() {
        let fit = scaling_exponent(&series_from_sigma(|t| 3.0 * t, 100), 1, 100).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-12);
        let fit = scaling_exponent(&series_from_sigma(|t| 0.5 * t.sqrt(), 100), 10, 100).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!(scaling_exponent(&series_from_sigma(|_| 0.0, 100), 1, 100).is_err());
        assert!(scaling_exponent(&series_from_sigma(|t| t, 100), 0, 100).is_err());
    }

    #[test]
    fn ballistic_translation() {
        let pair = CouplingPair::new(1.0, 0.0).unwrap();
        let s = evolve(&pair, &Frequency::golden(), 0.0, &SpinorField::delta(0, Spin::Up), 50).unwrap();
        for i in 0..s.t.len() {
            assert!((s.mean[i] - s.t[i] as f64).abs() < 1e-12);
            assert!(s.sigma2[i].abs() < 1e-12);
        }
    }

    #[test]
    fn refuses_small_window() {
        let pair = CouplingPair::new(0.5, 0.5).unwrap();
        let psi = SpinorField::delta(0, Spin::Up);
        assert!(evolve(&pair, &Frequency::golden(), 0.0, &psi, 0).is_err());
        let r = evolve_in_window(&pair, &Frequency::golden(), 0.0, &psi, 10, (-5, 11));
        assert!(matches!(r, Err(UamoError::Window(_))));
        assert!(evolve_in_window(&pair, &Frequency::golden(), 0.0, &psi, 10, (-11, 11)).is_ok());
    }
}

use std::f64::consts::PI;

use rayon::prelude::*;
use uamo_core::io::{Cell, CsvTable};
use uamo_core::{CouplingPair, Frequency, Result, UamoError, TAU};

use crate::bandset::{BandSet, MERGE_TOL};
use crate::bloch::bloch_eigenangles;
use crate::discriminant::period_phase;

/// Largest distance of a swept Bloch eigenangle from the band set before
/// [`band_set`] reports a failed construction.
pub const SWEEP_TOL: f64 = 1e-8;

/// Band set of the period-`q` walk at one phase from its edges.
///
/// The edges are the Bloch eigenangles at quasi-momenta `κ` and `κ+π`
/// ([`period_phase`]); consecutive sorted edges are paired into arcs so that
/// every arc contains exactly one eigenangle at `κ+π/2`, which lies inside
/// its band. No closed-form shortcut is taken.
pub fn bloch_band_set(pair: &CouplingPair, freq: &Frequency, theta: f64) -> Result<BandSet> {
    let kappa = period_phase(pair, freq, theta)?;
    let mut edges = bloch_eigenangles(pair, freq, theta, kappa)?;
    edges.extend(bloch_eigenangles(pair, freq, theta, kappa + PI)?);
    edges.sort_by(f64::total_cmp);
    let mids = bloch_eigenangles(pair, freq, theta, kappa + 0.5 * PI)?;
    let m = edges.len();
    let arcs_for = |offset: usize| -> Vec<(f64, f64)> {
        (0..m / 2)
            .map(|i| {
                let lo = edges[2 * i + offset];
                let j = 2 * i + 1 + offset;
                let hi = if j >= m { edges[j - m] + TAU } else { edges[j] };
                (lo, hi)
            })
            .collect()
    };
    let score = |arcs: &[(f64, f64)]| {
        mids.iter()
            .filter(|&&w| arcs.iter().any(|&(lo, hi)| (lo..=hi).contains(&w) || (lo..=hi).contains(&(w + TAU))))
            .count()
    };
    let (a0, a1) = (arcs_for(0), arcs_for(1));
    let arcs = if score(&a1) > score(&a0) { a1 } else { a0 };
    Ok(BandSet::from_arcs(arcs, MERGE_TOL))
}

/// Band set of the period-`q` walk at phase `θ`.
///
/// For `λ₁ = 0` or `λ₂ = 0` the closed-form sets `{|Re z| ≤ λ₂}` and
/// `{|Re z| ≤ λ₁}` are returned. Otherwise the set comes from
/// [`bloch_band_set`] and is checked against a sweep of `k_samples`
/// equispaced quasi-momenta: every swept eigenangle must lie in it (within
/// [`SWEEP_TOL`]), else the construction is reported as non-convergent.
pub fn band_set(pair: &CouplingPair, freq: &Frequency, theta: f64, k_samples: usize) -> Result<BandSet> {
    let q = freq
        .period()
        .ok_or_else(|| UamoError::invalid("band sets need a rational frequency"))?;
    if (k_samples as u64) < 8 * q {
        return Err(UamoError::invalid(format!("k_samples must be at least 8q = {}", 8 * q)));
    }
    if pair.lambda2() == 0.0 {
        return Ok(BandSet::re_band(pair.lambda1()));
    }
    if pair.lambda1() == 0.0 {
        return Ok(BandSet::re_band(pair.lambda2()));
    }
    let set = bloch_band_set(pair, freq, theta)?;
    for j in 0..k_samples {
        let k = TAU * j as f64 / k_samples as f64;
        for w in bloch_eigenangles(pair, freq, theta, k)? {
            let d = set.distance_to(w);
            if d > SWEEP_TOL {
                return Err(UamoError::NonConvergence(format!(
                    "Bloch eigenangle {w} at k = {k} lies {d:e} outside the band edges"
                )));
            }
        }
    }
    Ok(set)
}

/// Phase convention for spectra of a rational frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaMode {
    /// A single phase.
    Fixed(f64),
    /// Union over `θ_j = j/(n·q)`, `j = 0, …, n−1`, covering one period of
    /// the covariance `θ ↦ θ + 1/q`.
    Union(usize),
}

impl Default for ThetaMode {
    fn default() -> Self {
        ThetaMode::Union(8)
    }
}

impl ThetaMode {
    /// The sampled phases for period `q`.
    pub fn phases(&self, q: u64) -> Vec<f64> {
        match *self {
            ThetaMode::Fixed(theta) => vec![theta],
            ThetaMode::Union(n) => (0..n).map(|j| j as f64 / (n as f64 * q as f64)).collect(),
        }
    }
}

/// Band set at one phase: [`band_set`] when `k_samples` is given, else the
/// unchecked edge construction (with the same closed-form shortcuts).
fn band_set_at(pair: &CouplingPair, freq: &Frequency, theta: f64, k_samples: Option<usize>) -> Result<BandSet> {
    match k_samples {
        Some(k) => band_set(pair, freq, theta, k),
        None if pair.lambda2() == 0.0 => Ok(BandSet::re_band(pair.lambda1())),
        None if pair.lambda1() == 0.0 => Ok(BandSet::re_band(pair.lambda2())),
        None => bloch_band_set(pair, freq, theta),
    }
}

/// Union of band sets over `phases`; the first phase goes through the
/// `k_samples` sweep check of [`band_set`], the others use the edge
/// construction directly.
pub fn band_set_union(pair: &CouplingPair, freq: &Frequency, phases: &[f64], k_samples: usize) -> Result<BandSet> {
    let sets = phases
        .iter()
        .enumerate()
        .map(|(i, &theta)| band_set_at(pair, freq, theta, (i == 0).then_some(k_samples)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandSet::union_all(&sets, MERGE_TOL))
}

/// [`band_set_union`] over the phases of `mode`.
pub fn band_set_over(pair: &CouplingPair, freq: &Frequency, mode: ThetaMode, k_samples: usize) -> Result<BandSet> {
    let q = freq
        .period()
        .ok_or_else(|| UamoError::invalid("band sets need a rational frequency"))?;
    band_set_union(pair, freq, &mode.phases(q), k_samples)
}

/// Union over phases of [`bloch_band_set`] (no sweep check, no closed-form
/// shortcut).
pub fn bloch_band_set_over(pair: &CouplingPair, freq: &Frequency, mode: ThetaMode) -> Result<BandSet> {
    let q = freq
        .period()
        .ok_or_else(|| UamoError::invalid("band sets need a rational frequency"))?;
    let sets = mode
        .phases(q)
        .into_iter()
        .map(|theta| bloch_band_set(pair, freq, theta))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandSet::union_all(&sets, MERGE_TOL))
}

/// One row of the butterfly: the band set at `Φ = p/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ButterflyRow {
    pub p: u64,
    pub q: u64,
    pub set: BandSet,
}

/// Band sets for every `p/q ∈ [0, 1)` in lowest terms with `q ≤ q_max`,
/// ordered by `q` then `p`, each checked with `k_samples_per_q·q`
/// quasi-momenta. Rows are computed in parallel.
pub fn butterfly(
    pair: &CouplingPair,
    q_max: u64,
    mode: ThetaMode,
    k_samples_per_q: usize,
) -> Result<Vec<ButterflyRow>> {
    if q_max < 2 {
        return Err(UamoError::invalid("q_max must be at least 2"));
    }
    let fractions: Vec<(u64, u64)> = (1..=q_max)
        .flat_map(|q| (0..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q)))
        .collect();
    fractions
        .par_iter()
        .map(|&(p, q)| {
            let freq = Frequency::rational(p, q)?;
            let set = band_set_over(pair, &freq, mode, k_samples_per_q * q as usize)?;
            Ok(ButterflyRow { p, q, set })
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Table with header `p,q,phi,arc_lo,arc_hi`, one row per arc.
pub fn butterfly_table(rows: &[ButterflyRow]) -> CsvTable {
    let mut table = CsvTable::new(&["p", "q", "phi", "arc_lo", "arc_hi"]);
    for row in rows {
        for &(lo, hi) in row.set.arcs() {
            table.push(vec![
                Cell::from(row.p),
                Cell::from(row.q),
                Cell::from(row.p as f64 / row.q as f64),
                Cell::from(lo),
                Cell::from(hi),
            ]);
        }
    }
    table
}

/// Band measures along a list of frequencies `p/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTrend {
    pub rows: Vec<(u64, f64)>,
}

impl MeasureTrend {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].1 < w[0].1)
    }

    /// Last measure over first measure.
    pub fn final_ratio(&self) -> f64 {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => b.1 / a.1,
            _ => f64::NAN,
        }
    }

    /// Table with header `q,measure`.
    pub fn to_csv(&self) -> CsvTable {
        let mut table = CsvTable::new(&["q", "measure"]);
        for &(q, m) in &self.rows {
            table.push(vec![Cell::from(q), Cell::from(m)]);
        }
        table
    }
}

/// Measures of the band sets at the frequencies `p/q` in `convergents`.
pub fn band_measure_trend(
    pair: &CouplingPair,
    convergents: &[(u64, u64)],
    mode: ThetaMode,
    k_samples_per_q: usize,
) -> Result<MeasureTrend> {
    if pair.lambda1() == 0.0 && pair.lambda2() == 0.0 {
        return Err(UamoError::invalid("λ₁ = λ₂ = 0 has spectrum {±i}; no measure trend"));
    }
    let rows = convergents
        .par_iter()
        .map(|&(p, q)| {
            let freq = Frequency::rational(p, q)?;
            Ok((q, band_set_over(pair, &freq, mode, k_samples_per_q * q as usize)?.measure()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureTrend { rows })
}

/// Hausdorff distance between the phase-unions of the band sets of
/// `(λ₁, λ₂)` and `(λ₂, λ₁)` at a rational frequency.
/// The first phase of the grid is sweep-checked as in [`band_set_union`].
pub fn symmetry_check(pair: &CouplingPair, freq: &Frequency, theta_grid: &[f64], k_samples: usize) -> Result<f64> {
    let (a, b) = rayon::join(
        || band_set_union(pair, freq, theta_grid, k_samples),
        || band_set_union(&pair.swapped(), freq, theta_grid, k_samples),
    );
    Ok(a?.hausdorff(&b?))
}

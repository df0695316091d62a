use faer::Mat;
use num_complex::Complex64 as C64;
use uamo_core::{CouplingPair, Frequency, Result, UamoError};
use uamo_walk::{periodic_matrix, SpinorField};

/// Eigenvalues closer than this to another eigenvalue are flagged degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Amplitudes below this fraction of the peak are treated as rounding noise
/// by [`decay_rate`].
pub const NOISE_FLOOR: f64 = 1e-13;

/// A normalized eigenvector of the periodic wrap.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub z: C64,
    /// One period of the eigenvector, on `q` consecutive sites centered on
    /// the peak (the wrap has `ψ_{n+q} = ψ_n`).
    pub psi: SpinorField,
    /// `‖Wψ − zψ‖` for the periodic wrap.
    pub residual: f64,
    pub decay_rate: Option<f64>,
    /// `1/Σ_n w_n²` with site weights `w_n = |ψ_n⁺|² + |ψ_n⁻|²`.
    pub participation: f64,
    /// Another eigenvalue lies within [`DEGENERACY_TOL`]; the eigenvector is
    /// then an arbitrary element of the cluster's eigenspace.
    pub degenerate: bool,
}

impl EigenPair {
    /// Site of largest weight.
    pub fn peak(&self) -> i64 {
        peak_site(&self.psi)
    }
}

fn site_weight(psi: &SpinorField, n: i64) -> f64 {
    let (a, b) = psi.get(n);
    a.norm_sqr() + b.norm_sqr()
}

fn peak_site(psi: &SpinorField) -> i64 {
    let mut best = (psi.n_min(), f64::NEG_INFINITY);
    for n in psi.n_min()..=psi.n_max() {
        let w = site_weight(psi, n);
        if w > best.1 {
            best = (n, w);
        }
    }
    best.0
}

/// `(Σ w_n)² / Σ w_n²`: about 1 for a single-site state and about the
/// number of sites for an extended one.
pub fn participation_ratio(psi: &SpinorField) -> f64 {
    let (mut s1, mut s2) = (0.0, 0.0);
    for n in psi.n_min()..=psi.n_max() {
        let w = site_weight(psi, n);
        s1 += w;
        s2 += w * w;
    }
    s1 * s1 / s2
}

/// All eigenpairs of the period-`q` wrap with Bloch phase `k = 0`, in the
/// order returned by the eigensolver.
pub fn ring_eigenpairs(pair: &CouplingPair, freq: &Frequency, theta: f64) -> Result<Vec<EigenPair>> {
    let q = freq
        .period()
        .ok_or_else(|| UamoError::invalid("eigenpairs need a rational frequency"))? as usize;
    let m = periodic_matrix(pair, freq, theta, q, 0.0)?;
    let eig = m
        .eigen()
        .map_err(|e| UamoError::NonConvergence(format!("eigensolver failed: {e:?}")))?;
    let u = eig.U();
    let s = eig.S().column_vector();
    let zs: Vec<C64> = (0..2 * q).map(|i| s[i]).collect();
    let mut out = Vec::with_capacity(2 * q);
    for (i, &z) in zs.iter().enumerate() {
        let v: Vec<C64> = (0..2 * q).map(|r| u[(r, i)]).collect();
        let residual = ring_residual(&m, &v, z);
        let degenerate = zs.iter().enumerate().any(|(j, &w)| j != i && (w - z).norm() < DEGENERACY_TOL);
        let psi = centered_period(&v, q)?;
        out.push(EigenPair {
            z,
            decay_rate: decay_rate(&psi),
            participation: participation_ratio(&psi),
            psi,
            residual,
            degenerate,
        });
    }
    Ok(out)
}

fn ring_residual(m: &Mat<C64>, v: &[C64], z: C64) -> f64 {
    (0..m.nrows())
        .map(|r| {
            let mv: C64 = (0..m.ncols()).map(|c| m[(r, c)] * v[c]).sum();
            (mv - z * v[r]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// Normalizes `v`, fixes its phase so the larger component at the peak is
/// real and positive, and rotates the period so the peak sits in the middle.
fn centered_period(v: &[C64], q: usize) -> Result<SpinorField> {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let w = |j: usize| v[2 * j].norm_sqr() + v[2 * j + 1].norm_sqr();
    let peak = (0..q).fold(0, |b, j| if w(j) > w(b) { j } else { b });
    let anchor = if v[2 * peak].norm() >= v[2 * peak + 1].norm() { v[2 * peak] } else { v[2 * peak + 1] };
    let phase = anchor.conj() / anchor.norm() / norm;
    let n_min = peak as i64 - (q / 2) as i64;
    let at = |n: i64, off: usize| v[2 * n.rem_euclid(q as i64) as usize + off] * phase;
    let plus = (0..q as i64).map(|i| at(n_min + i, 0)).collect();
    let minus = (0..q as i64).map(|i| at(n_min + i, 1)).collect();
    SpinorField::from_components(n_min, plus, minus)
}

/// The `top_m` eigenpairs of smallest participation ratio, most localized
/// first.
pub fn localized_eigenpairs(pair: &CouplingPair, freq: &Frequency, theta: f64, top_m: usize) -> Result<Vec<EigenPair>> {
    let mut all = ring_eigenpairs(pair, freq, theta)?;
    all.sort_by(|a, b| {
        a.participation
            .total_cmp(&b.participation)
            .then(a.z.arg().total_cmp(&b.z.arg()))
    });
    all.truncate(top_m);
    Ok(all)
}

/// Exponential decay rate `γ` of `|ψ_n⁺| + |ψ_n⁻| ~ e^{−γ|n − n_peak|}`.
///
/// Least-squares slope over both flanks, dropping the outer 10% of distances
/// and amplitudes below [`NOISE_FLOOR`] times the peak. Returns
/// `Some(f64::INFINITY)` when the nonzero part is too short to fit (compact
/// support) and `None` when the fitted amplitude does not decay.
pub fn decay_rate(psi: &SpinorField) -> Option<f64> {
    let amp = |n: i64| {
        let (a, b) = psi.get(n);
        a.norm() + b.norm()
    };
    let peak = peak_site(psi);
    let top = amp(peak);
    if top == 0.0 {
        return None;
    }
    let d_max = (peak - psi.n_min()).max(psi.n_max() - peak);
    let d_fit = ((0.9 * d_max as f64).floor() as i64).max(1);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut below_floor = false;
    for n in psi.n_min()..=psi.n_max() {
        let d = (n - peak).abs();
        if d == 0 || d > d_fit {
            continue;
        }
        let a = amp(n);
        if a <= NOISE_FLOOR * top {
            below_floor = true;
            continue;
        }
        xs.push(d as f64);
        ys.push((a / top).ln());
    }
    let distinct = {
        let mut d: Vec<i64> = xs.iter().map(|&x| x as i64).collect();
        d.sort_unstable();
        d.dedup();
        d.len()
    };
    if distinct < 3 {
        return below_floor.then_some(f64::INFINITY);
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let rate = -sxy / sxx;
    (rate > 0.0).then_some(rate)
}

/// Weight of `psi` outside `[peak − radius, peak + radius]`.
pub fn tail_mass(psi: &SpinorField, radius: i64) -> f64 {
    let peak = peak_site(psi);
    (psi.n_min()..=psi.n_max())
        .filter(|n| (n - peak).abs() > radius)
        .map(|n| site_weight(psi, n))
        .fold(0.0, |acc, w| acc + w)
}

/// Smallest radius whose tail mass is at most `tau`.
pub fn truncation_radius(psi: &SpinorField, tau: f64) -> i64 {
    let peak = peak_site(psi);
    let r_max = (peak - psi.n_min()).max(psi.n_max() - peak);
    (0..=r_max).find(|&r| tail_mass(psi, r) <= tau).unwrap_or(r_max)
}

/// `psi` restricted to `[peak − radius, peak + radius]` (not renormalized).
pub fn truncate(psi: &SpinorField, radius: i64) -> Result<SpinorField> {
    let peak = peak_site(psi);
    psi.restricted((peak - radius).max(psi.n_min()), (peak + radius).min(psi.n_max()))
}

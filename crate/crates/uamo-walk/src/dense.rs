use faer::Mat;
use num_complex::Complex64 as C64;
use uamo_core::{CouplingPair, Frequency, Result, UamoError};

use crate::field::SpinorField;
use crate::operator::coin;

/// Index map between a site window `[n_min, n_min+len)` and dense vectors of
/// dimension `2·len`: `δ_n⁺ ↦ 2(n−n_min)`, `δ_n⁻ ↦ 2(n−n_min)+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basis {
    pub n_min: i64,
    pub len: usize,
}

impl Basis {
    pub fn new(n_min: i64, n_max: i64) -> Result<Self> {
        if n_max < n_min {
            return Err(UamoError::invalid("empty window"));
        }
        Ok(Self { n_min, len: (n_max - n_min + 1) as usize })
    }

    pub fn dim(&self) -> usize {
        2 * self.len
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.len as i64 - 1
    }

    /// Dense index of `δ_n⁺` (`up = true`) or `δ_n⁻`, if `n` is in the window.
    pub fn index(&self, n: i64, up: bool) -> Option<usize> {
        let i = n - self.n_min;
        (i >= 0 && (i as usize) < self.len).then(|| 2 * i as usize + usize::from(!up))
    }

    /// Coordinates of `psi` in this basis (sites outside the window dropped).
    pub fn to_vector(&self, psi: &SpinorField) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.dim()];
        for j in 0..self.len {
            let (a, b) = psi.get(self.n_min + j as i64);
            v[2 * j] = a;
            v[2 * j + 1] = b;
        }
        v
    }

    /// The field with coordinates `v` on this window.
    pub fn to_field(&self, v: &[C64]) -> SpinorField {
        let plus = (0..self.len).map(|j| v[2 * j]).collect();
        let minus = (0..self.len).map(|j| v[2 * j + 1]).collect();
        SpinorField::from_components(self.n_min, plus, minus).expect("non-empty window")
    }
}

/// Image columns `Wδ_n^s` as lists of `(site, up?, amplitude)`.
///
/// `Wδ_n⁺ = λq¹¹δ_{n+1}⁺ + λ′q¹¹δ_n⁻ + λq²¹δ_{n−1}⁻ − λ′q²¹δ_n⁺`, and the same
/// with `q¹², q²²` for `δ_n⁻`.
fn column(pair: &CouplingPair, freq: &Frequency, theta: f64, n: i64, up: bool) -> [(i64, bool, C64); 4] {
    let q = coin(pair, freq, theta, n);
    let (l, lp) = (pair.lambda1(), pair.lambda1p());
    let (top, bottom) = if up { (q.q11, q.q21) } else { (q.q12, q.q22) };
    [
        (n + 1, true, l * top),
        (n, false, lp * top),
        (n - 1, false, l * bottom),
        (n, true, -lp * bottom),
    ]
}

/// Truncation `P W P` of the walk to the window `basis` (amplitude leaving
/// the window is dropped). Rows away from the window edges are exact.
pub fn dense_window_matrix(pair: &CouplingPair, freq: &Frequency, theta: f64, basis: Basis) -> Mat<C64> {
    let mut m = Mat::<C64>::zeros(basis.dim(), basis.dim());
    for j in 0..basis.len {
        let n = basis.n_min + j as i64;
        for up in [true, false] {
            let col = basis.index(n, up).unwrap();
            for (site, s, amp) in column(pair, freq, theta, n, up) {
                if let Some(row) = basis.index(site, s) {
                    m[(row, col)] += amp;
                }
            }
        }
    }
    m
}

/// The walk on the ring `ℤ/len·ℤ` (sites `0..len`) with Bloch twist `k`:
/// amplitude that leaves through the right edge re-enters at site 0 with
/// factor `e^{−ik}`, and through the left edge with `e^{ik}`.
///
/// This is the restriction of `W` to sequences with `ψ_{n+len} = e^{ik}ψ_n`;
/// it is exactly unitary. Requires a rational frequency whose period divides
/// `len`, so that the coins are `len`-periodic.
pub fn periodic_matrix(pair: &CouplingPair, freq: &Frequency, theta: f64, len: usize, k: f64) -> Result<Mat<C64>> {
    let q = freq
        .period()
        .ok_or_else(|| UamoError::invalid("periodic wrap needs a rational frequency"))?;
    if len == 0 || len as u64 % q != 0 {
        return Err(UamoError::invalid(format!("ring length {len} is not a multiple of the period {q}")));
    }
    let basis = Basis { n_min: 0, len };
    let mut m = Mat::<C64>::zeros(basis.dim(), basis.dim());
    let (sk, ck) = k.sin_cos();
    let twist_right = C64::new(ck, -sk);
    let twist_left = C64::new(ck, sk);
    for j in 0..len {
        let n = j as i64;
        for up in [true, false] {
            let col = basis.index(n, up).unwrap();
            for (site, s, amp) in column(pair, freq, theta, n, up) {
                let (wrapped, factor) = if site >= len as i64 {
                    (site - len as i64, twist_right)
                } else if site < 0 {
                    (site + len as i64, twist_left)
                } else {
                    (site, C64::new(1.0, 0.0))
                };
                let row = basis.index(wrapped, s).unwrap();
                m[(row, col)] += amp * factor;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unitarity_residual(m: &Mat<C64>) -> f64 {
        let p = m.adjoint() * m;
        let mut r: f64 = 0.0;
        for i in 0..p.nrows() {
            for j in 0..p.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((p[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        r
    }

    #[test]
    fn periodic_wrap_is_unitary() {
        let pair = CouplingPair::new(0.37, 0.81).unwrap();
        for (p, q) in [(0, 1), (1, 2), (2, 5), (8, 13)] {
            let f = Frequency::rational(p, q).unwrap();
            for len in [q as usize, 2 * q as usize] {
                let m = periodic_matrix(&pair, &f, 0.123, len, 0.7).unwrap();
                assert!(unitarity_residual(&m) < 1e-13);
            }
        }
        let f = Frequency::rational(2, 5).unwrap();
        assert!(periodic_matrix(&pair, &f, 0.0, 7, 0.0).is_err());
        assert!(periodic_matrix(&pair, &Frequency::golden(), 0.0, 5, 0.0).is_err());
    }
}

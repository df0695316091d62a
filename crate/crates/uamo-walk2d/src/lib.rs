//! The two-dimensional magnetic quantum walk
//! `W⁽²⁾ = T_{1,λ₁,Φ} C₀ T_{2,λ₂,Φ} C₀` on the torus `ℤ_L²`.
//!
//! In the symmetric gauge the magnetic translations act by
//!
//! ```text
//! U₁ δ_n = e^{−iπΦn₂} δ_{n+e₁},   U₂ δ_n = e^{iπΦn₁} δ_{n+e₂},
//! ```
//!
//! and the coupled translations are `T_{j,λ} = [[λU_j, −λ′], [λ′, λU_j*]]` in
//! the spin decomposition `ℓ²(ℤ_L²) ⊕ ℓ²(ℤ_L²)`. For flux `p/q` the phases
//! close up on the torus exactly when `L` is a multiple of `2q`.

use faer::Mat;
pub use num_complex::Complex64 as C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use uamo_core::io::{Cell, CsvTable};
use uamo_core::{complement, CouplingPair, Frequency, Result, UamoError};

/// Translation direction on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    One,
    Two,
}

/// Site and spin indexing of `ℓ²(ℤ_L²) ⊗ ℂ²`:
/// `δ_{(n₁,n₂)}^s ↦ 2(n₁L + n₂) + [s = −]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusBasis {
    pub l: usize,
}

impl TorusBasis {
    pub fn dim(&self) -> usize {
        2 * self.l * self.l
    }

    /// Index of `δ_{(n₁,n₂)}^±` with coordinates taken mod `L`.
    pub fn index(&self, n1: i64, n2: i64, up: bool) -> usize {
        let l = self.l as i64;
        let site = (n1.rem_euclid(l) * l + n2.rem_euclid(l)) as usize;
        2 * site + usize::from(!up)
    }
}

/// `(p, q)` of a rational flux and a torus size compatible with it.
fn check_torus(flux: &Frequency, l: usize) -> Result<(u64, u64)> {
    let Frequency::Rational { p, q } = *flux else {
        return Err(UamoError::invalid("the torus walk needs a rational flux p/q"));
    };
    if l == 0 || l as u64 % (2 * q) != 0 {
        return Err(UamoError::invalid(format!("torus size L = {l} is not a positive multiple of 2q = {}", 2 * q)));
    }
    Ok((p, q))
}

/// `e^{iπ(p/q)m}` with `p·m` reduced mod `2q` in integers.
fn gauge_phase(p: u64, q: u64, m: i64) -> C64 {
    let r = (p as i128 * m as i128).rem_euclid(2 * q as i128) as f64;
    let (s, c) = (PI * r / q as f64).sin_cos();
    C64::new(c, s)
}

/// Applies `T_{axis,λ,Φ}` to the coordinate vector `v`.
fn apply_translation(axis: Axis, lambda: f64, lambdap: f64, pq: (u64, u64), basis: TorusBasis, v: &[C64]) -> Vec<C64> {
    let (p, q) = pq;
    let l = basis.l as i64;
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    for n1 in 0..l {
        for n2 in 0..l {
            let up = v[basis.index(n1, n2, true)];
            let down = v[basis.index(n1, n2, false)];
            // U δ_n = φ(n) δ_{n+e}; U* δ_n = conj(φ(n−e)) δ_{n−e}.
            let (fwd, fwd_phase, back, back_phase) = match axis {
                Axis::One => ((n1 + 1, n2), gauge_phase(p, q, -n2), (n1 - 1, n2), gauge_phase(p, q, n2)),
                Axis::Two => ((n1, n2 + 1), gauge_phase(p, q, n1), (n1, n2 - 1), gauge_phase(p, q, -n1)),
            };
            out[basis.index(fwd.0, fwd.1, true)] += lambda * fwd_phase * up;
            out[basis.index(n1, n2, false)] += lambdap * up;
            out[basis.index(n1, n2, true)] -= lambdap * down;
            out[basis.index(back.0, back.1, false)] += lambda * back_phase * down;
        }
    }
    out
}

/// Applies `C₀ = (1/√2)[[1, i], [−i, −1]]` at every site.
fn apply_c0(v: &[C64]) -> Vec<C64> {
    let i = C64::new(0.0, 1.0);
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    for (o, x) in out.chunks_exact_mut(2).zip(v.chunks_exact(2)) {
        o[0] = (x[0] + i * x[1]) * FRAC_1_SQRT_2;
        o[1] = (-i * x[0] - x[1]) * FRAC_1_SQRT_2;
    }
    out
}

fn dense_from(dim: usize, f: impl Fn(&[C64]) -> Vec<C64>) -> Mat<C64> {
    let mut m = Mat::<C64>::zeros(dim, dim);
    let mut e = vec![C64::new(0.0, 0.0); dim];
    for j in 0..dim {
        e[j] = C64::new(1.0, 0.0);
        let col = f(&e);
        e[j] = C64::new(0.0, 0.0);
        for (i, x) in col.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

/// Dense matrix of the coupled magnetic translation `T_{axis,λ,Φ}` on
/// `ℤ_L²`; at `λ = 1` this is the magnetic translation
/// `δ_n^s ↦ e^{∓siπΦn}δ_{n+se}^s`.
pub fn magnetic_translation(axis: Axis, lambda: f64, flux: &Frequency, l: usize) -> Result<Mat<C64>> {
    let pq = check_torus(flux, l)?;
    let lp = complement(lambda)?;
    let basis = TorusBasis { l };
    Ok(dense_from(basis.dim(), |v| apply_translation(axis, lambda, lp, pq, basis, v)))
}

/// Dense matrix of the scalar magnetic shift `U_{axis,Φ}` on `ℓ²(ℤ_L²)`
/// (site index `n₁L + n₂`).
pub fn magnetic_shift(axis: Axis, flux: &Frequency, l: usize) -> Result<Mat<C64>> {
    let (p, q) = check_torus(flux, l)?;
    let li = l as i64;
    let site = |n1: i64, n2: i64| (n1.rem_euclid(li) * li + n2.rem_euclid(li)) as usize;
    let mut m = Mat::<C64>::zeros(l * l, l * l);
    for n1 in 0..li {
        for n2 in 0..li {
            let (row, phase) = match axis {
                Axis::One => (site(n1 + 1, n2), gauge_phase(p, q, -n2)),
                Axis::Two => (site(n1, n2 + 1), gauge_phase(p, q, n1)),
            };
            m[(row, site(n1, n2))] = phase;
        }
    }
    Ok(m)
}

/// The walk `W⁽²⁾` on a torus, immutable after construction.
#[derive(Debug, Clone)]
pub struct TorusWalk {
    pub l: usize,
    pub flux: Frequency,
    pub pair: CouplingPair,
    pub matrix: Mat<C64>,
}

impl TorusWalk {
    pub fn basis(&self) -> TorusBasis {
        TorusBasis { l: self.l }
    }

    /// `max |(W*W − I)_{jk}|`.
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

    /// `|(Wδ_{(0,0)}^s)_n|²` summed over spin, for the displacements
    /// `n ∈ {−1, 0, 1}²` (indexed `[d₁+1][d₂+1]`).
    pub fn one_step_weights(&self, up: bool) -> [[f64; 3]; 3] {
        let b = self.basis();
        let col = b.index(0, 0, up);
        let mut w = [[0.0; 3]; 3];
        for d1 in -1..=1i64 {
            for d2 in -1..=1i64 {
                w[(d1 + 1) as usize][(d2 + 1) as usize] = [true, false]
                    .iter()
                    .map(|&s| self.matrix[(b.index(d1, d2, s), col)].norm_sqr())
                    .sum();
            }
        }
        w
    }
}

/// Builds `W⁽²⁾ = T_{1,λ₁,Φ} C₀ T_{2,λ₂,Φ} C₀` on `ℤ_L²`.
pub fn walk2d_build(pair: &CouplingPair, flux: &Frequency, l: usize) -> Result<TorusWalk> {
    let pq = check_torus(flux, l)?;
    let basis = TorusBasis { l };
    let (l1, l1p, l2, l2p) = (pair.lambda1(), pair.lambda1p(), pair.lambda2(), pair.lambda2p());
    let matrix = dense_from(basis.dim(), |v| {
        let v = apply_c0(v);
        let v = apply_translation(Axis::Two, l2, l2p, pq, basis, &v);
        let v = apply_c0(&v);
        apply_translation(Axis::One, l1, l1p, pq, basis, &v)
    });
    Ok(TorusWalk { l, flux: *flux, pair: *pair, matrix })
}

/// Eigenvalues of the torus walk as angles in `[0, 2π)`, sorted ascending.
pub fn walk2d_spectrum(walk: &TorusWalk) -> Result<Vec<f64>> {
    let ev = walk
        .matrix
        .eigenvalues()
        .map_err(|e| UamoError::NonConvergence(format!("torus eigensolver: {e:?}")))?;
    let mut w: Vec<f64> = ev.iter().map(|z| z.arg().rem_euclid(2.0 * PI)).collect();
    w.sort_by(f64::total_cmp);
    Ok(w)
}

/// Table with header `angle`.
pub fn spectrum_table(angles: &[f64]) -> CsvTable {
    let mut table = CsvTable::new(&["angle"]);
    for &a in angles {
        table.push(vec![Cell::from(a)]);
    }
    table
}


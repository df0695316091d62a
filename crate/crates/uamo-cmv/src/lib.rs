//! The walk as a generalized extended CMV matrix `E = LM`.
//!
//! A pair `(α, ρ)` with `|α|² + |ρ|² = 1` defines the unitary block
//! `Θ(α, ρ) = [[ᾱ, ρ], [ρ̄, −α]]` acting on `ℓ²({j, j+1})`. `L` is the direct
//! sum of the even blocks and `M` of the odd blocks. In the ordered basis
//! `…, δ₋₁⁻, δ₀⁺, δ₀⁻, δ₁⁺, …` (CMV index `2n−1` for `δ_n⁺` and `2n` for
//! `δ_n⁻`) the walk is the CMV matrix with even pairs `(λ₁′, λ₁)` and odd
//! pairs read off the coins, `Q_n = [[ρ̄_{2n−1}, −α_{2n−1}], [ᾱ_{2n−1}, ρ_{2n−1}]]`.

use faer::Mat;
use serde::Serialize;
use uamo_core::{CouplingPair, Frequency, Result, UamoError};
use uamo_walk::{coin, dense_window_matrix, Basis};

pub use num_complex::Complex64 as C64;

/// A Verblunsky pair `(α_j, ρ_j)` at CMV index `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerblunskyPair {
    pub index: i64,
    pub alpha: C64,
    pub rho: C64,
}

impl VerblunskyPair {
    /// `| |α|² + |ρ|² − 1 |`.
    pub fn sphere_residual(&self) -> f64 {
        (self.alpha.norm_sqr() + self.rho.norm_sqr() - 1.0).abs()
    }

    /// `Θ(α, ρ)` as rows.
    pub fn theta(&self) -> [[C64; 2]; 2] {
        theta_block(self.alpha, self.rho)
    }
}

/// `Θ(α, ρ) = [[ᾱ, ρ], [ρ̄, −α]]`.
pub fn theta_block(alpha: C64, rho: C64) -> [[C64; 2]; 2] {
    [[alpha.conj(), rho], [rho.conj(), -alpha]]
}

/// CMV index of `δ_n^±`.
pub fn cmv_index(n: i64, up: bool) -> i64 {
    if up {
        2 * n - 1
    } else {
        2 * n
    }
}

/// Verblunsky pairs of the walk for the sites `n_lo..=n_hi`: CMV indices
/// `2n_lo − 1 ..= 2n_hi`, ordered by index. Even pairs are `(λ₁′, λ₁)`; the
/// odd pair `2n−1` has `α = λ₂ sin 2π(nΦ+θ)` and `ρ = λ₂ cos 2π(nΦ+θ) − iλ₂′`.
pub fn walk_to_verblunsky(pair: &CouplingPair, freq: &Frequency, theta: f64, n_lo: i64, n_hi: i64) -> Vec<VerblunskyPair> {
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        let q = coin(pair, freq, theta, n);
        out.push(VerblunskyPair { index: 2 * n - 1, alpha: -q.q12, rho: q.q22 });
        out.push(VerblunskyPair {
            index: 2 * n,
            alpha: C64::new(pair.lambda1p(), 0.0),
            rho: C64::new(pair.lambda1(), 0.0),
        });
    }
    out
}

/// Banded realization of `L`, `M` and `E = LM` on the CMV indices
/// `j_min ..= j_min + dim − 1`.
///
/// Blocks whose index pair leaves the window are dropped, so rows within two
/// indices of the window edge are truncated; all other rows are exact.
#[derive(Debug, Clone)]
pub struct GeneralizedCmv {
    pub j_min: i64,
    pub l: Mat<C64>,
    pub m: Mat<C64>,
    pub e: Mat<C64>,
}

impl GeneralizedCmv {
    pub fn dim(&self) -> usize {
        self.e.nrows()
    }

    /// Row/column position of CMV index `j`, if inside the window.
    pub fn position(&self, j: i64) -> Option<usize> {
        let i = j - self.j_min;
        (i >= 0 && (i as usize) < self.dim()).then_some(i as usize)
    }
}

fn check_consecutive(pairs: &[VerblunskyPair]) -> Result<()> {
    if pairs.is_empty() {
        return Err(UamoError::invalid("no Verblunsky pairs"));
    }
    if pairs.windows(2).any(|w| w[1].index != w[0].index + 1) {
        return Err(UamoError::invalid("Verblunsky pairs must have consecutive indices"));
    }
    Ok(())
}

fn place(target: &mut Mat<C64>, at: usize, block: [[C64; 2]; 2]) {
    for r in 0..2 {
        for c in 0..2 {
            target[(at + r, at + c)] = block[r][c];
        }
    }
}

/// Builds `L`, `M` and `E = LM` from consecutive pairs `j₀ ..= j₁` on the
/// window `j₀ ..= j₁ + 1`.
pub fn lm_build(pairs: &[VerblunskyPair]) -> Result<GeneralizedCmv> {
    check_consecutive(pairs)?;
    let j_min = pairs[0].index;
    let dim = pairs.len() + 1;
    let mut l = Mat::<C64>::zeros(dim, dim);
    let mut m = Mat::<C64>::identity(dim, dim);
    // Indices not covered by any block of M inside the window keep the
    // identity; such rows are boundary rows in any case.
    let mut l_cover = vec![false; dim];
    for p in pairs {
        let at = (p.index - j_min) as usize;
        if p.index.rem_euclid(2) == 0 {
            place(&mut l, at, p.theta());
            l_cover[at] = true;
            l_cover[at + 1] = true;
        } else {
            place(&mut m, at, p.theta());
        }
    }
    for (i, covered) in l_cover.into_iter().enumerate() {
        if !covered {
            l[(i, i)] = C64::new(1.0, 0.0);
        }
    }
    let e = &l * &m;
    Ok(GeneralizedCmv { j_min, l, m, e })
}

/// `E` on the ring `ℤ/Nℤ` of CMV indices from one period of `N` (even)
/// consecutive pairs starting at an even index; the last block wraps
/// `{N−1, 0}`.
pub fn lm_build_periodic(pairs: &[VerblunskyPair]) -> Result<Mat<C64>> {
    check_consecutive(pairs)?;
    let n = pairs.len();
    if n % 2 != 0 || pairs[0].index.rem_euclid(2) != 0 {
        return Err(UamoError::invalid("a periodic CMV ring needs an even number of pairs starting at an even index"));
    }
    let mut l = Mat::<C64>::zeros(n, n);
    let mut m = Mat::<C64>::zeros(n, n);
    for (i, p) in pairs.iter().enumerate() {
        let t = p.theta();
        let target = if i % 2 == 0 { &mut l } else { &mut m };
        let idx = [i, (i + 1) % n];
        for r in 0..2 {
            for c in 0..2 {
                target[(idx[r], idx[c])] = t[r][c];
            }
        }
    }
    Ok(&l * &m)
}

/// The entries of `E` in the rows `2k` and `2k+1` from the explicit
/// five-diagonal formula, as `(row, column, value)` in CMV indices.
///
/// Row `2k` has `ᾱ_{2k}ρ̄_{2k−1}, −ᾱ_{2k}α_{2k−1}, ᾱ_{2k+1}ρ_{2k}, ρ_{2k+1}ρ_{2k}`
/// and row `2k+1` has `ρ̄_{2k}ρ̄_{2k−1}, −ρ̄_{2k}α_{2k−1}, −ᾱ_{2k+1}α_{2k}, −ρ_{2k+1}α_{2k}`
/// in the columns `2k−1, …, 2k+2`.
pub fn cmv_entries(pairs: &[VerblunskyPair], k: i64) -> Result<Vec<(i64, i64, C64)>> {
    check_consecutive(pairs)?;
    let get = |j: i64| -> Result<VerblunskyPair> {
        pairs
            .get((j - pairs[0].index) as usize)
            .filter(|_| j >= pairs[0].index)
            .copied()
            .ok_or_else(|| UamoError::invalid(format!("pair {j} outside the supplied range")))
    };
    let (am, a0, a1) = (get(2 * k - 1)?, get(2 * k)?, get(2 * k + 1)?);
    let (r, c) = (2 * k, 2 * k - 1);
    Ok(vec![
        (r, c, a0.alpha.conj() * am.rho.conj()),
        (r, c + 1, -a0.alpha.conj() * am.alpha),
        (r, c + 2, a1.alpha.conj() * a0.rho),
        (r, c + 3, a1.rho * a0.rho),
        (r + 1, c, a0.rho.conj() * am.rho.conj()),
        (r + 1, c + 1, -a0.rho.conj() * am.alpha),
        (r + 1, c + 2, -a1.alpha.conj() * a0.alpha),
        (r + 1, c + 3, -a1.rho * a0.alpha),
    ])
}

/// Largest entrywise deviation between the walk on the sites `−m..=m`,
/// reordered into the CMV basis, and `E = LM` built from the walk's
/// Verblunsky pairs, over the rows that are exact in both truncations
/// (CMV indices `−2m+2 ..= 2m−3`).
pub fn cmv_equals_walk(pair: &CouplingPair, freq: &Frequency, theta: f64, m: i64) -> Result<f64> {
    if m < 3 {
        return Err(UamoError::invalid("window half-width m must be at least 3"));
    }
    let basis = Basis::new(-m, m)?;
    let w = dense_window_matrix(pair, freq, theta, basis);
    let cmv = lm_build(&walk_to_verblunsky(pair, freq, theta, -m, m))?;
    let mut worst: f64 = 0.0;
    for row_site in -m..=m {
        for row_up in [true, false] {
            let jr = cmv_index(row_site, row_up);
            if !(-2 * m + 2..=2 * m - 3).contains(&jr) {
                continue;
            }
            for col_site in -m..=m {
                for col_up in [true, false] {
                    let jc = cmv_index(col_site, col_up);
                    let a = w[(basis.index(row_site, row_up).unwrap(), basis.index(col_site, col_up).unwrap())];
                    let (Some(pr), Some(pc)) = (cmv.position(jr), cmv.position(jc)) else {
                        continue;
                    };
                    worst = worst.max((a - cmv.e[(pr, pc)]).norm());
                }
            }
        }
    }
    Ok(worst)
}

#[derive(Serialize)]
struct PairRecord {
    n: i64,
    alpha_re: f64,
    alpha_im: f64,
    rho_re: f64,
    rho_im: f64,
}

/// JSON array of `{n, alpha_re, alpha_im, rho_re, rho_im}` records.
pub fn verblunsky_json(pairs: &[VerblunskyPair]) -> String {
    let records: Vec<PairRecord> = pairs
        .iter()
        .map(|p| PairRecord {
            n: p.index,
            alpha_re: p.alpha.re,
            alpha_im: p.alpha.im,
            rho_re: p.rho.re,
            rho_im: p.rho.im,
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("plain records serialize")
}

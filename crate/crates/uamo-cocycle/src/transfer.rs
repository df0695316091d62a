use num_complex::Complex64 as C64;
use uamo_core::{CouplingPair, Frequency, Result, UamoError};
use uamo_walk::{coin, Coin2x2, SpinorField};

use crate::mat2::Mat2c;

/// Coins with `|q²²|` at or below this are treated as off-diagonal.
pub const SINGULAR_COIN_TOL: f64 = 1e-14;

/// Transfer matrix `T_z(n)` of the split-step walk `S_λ Q` at one site:
///
/// ```text
/// T = (1/q²²) [[λ⁻¹z⁻¹ det Q + λ′λ⁻¹(q²¹ − q¹²) + zλ′²λ⁻¹,  q¹² − λ′z],
///              [−q²¹ − λ′z,                                 λz       ]]
/// ```
///
/// mapping `(ψ_n⁺, ψ_{n−1}⁻)` to `(ψ_{n+1}⁺, ψ_n⁻)` along solutions of
/// `Wψ = zψ`.
pub fn transfer_t(q: &Coin2x2, lambda: f64, z: C64) -> Result<Mat2c> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(UamoError::invalid(format!("transfer matrices need 0 < λ ≤ 1, got {lambda}")));
    }
    if z == C64::new(0.0, 0.0) {
        return Err(UamoError::invalid("spectral parameter z must be nonzero"));
    }
    if q.q22.norm() <= SINGULAR_COIN_TOL {
        return Err(UamoError::singular("off-diagonal coin: q22 vanishes"));
    }
    let lp = ((1.0 - lambda) * (1.0 + lambda)).sqrt();
    let zi = z.inv();
    let a = zi * q.det() / lambda + (q.q21 - q.q12) * (lp / lambda) + z * (lp * lp / lambda);
    let b = q.q12 - z * lp;
    let c = -q.q21 - z * lp;
    let d = z * lambda;
    Ok(Mat2c::new(a, b, c, d).scale(q.q22.inv()))
}

/// Solution of `Wψ = zψ` on the sites `[n_lo, n_hi]` generated by the
/// transfer matrices from the initial data `(ψ₀⁺, ψ₋₁⁻)`.
///
/// Requires `n_lo ≤ −1` and `n_hi ≥ 0`. Every row of `Wψ = zψ` whose stencil
/// lies inside the window is satisfied.
pub fn solve_by_transfer(
    pair: &CouplingPair,
    freq: &Frequency,
    theta: f64,
    z: C64,
    init: (C64, C64),
    n_lo: i64,
    n_hi: i64,
) -> Result<SpinorField> {
    if n_lo > -1 || n_hi < 0 {
        return Err(UamoError::invalid("window must contain the sites −1 and 0"));
    }
    let l = pair.lambda1();
    // v[n − n_lo] = (ψ_n⁺, ψ_{n−1}⁻) for n in [n_lo, n_hi + 1].
    let len = (n_hi - n_lo + 2) as usize;
    let mut v = vec![[C64::new(0.0, 0.0); 2]; len];
    let at = |n: i64| (n - n_lo) as usize;
    v[at(0)] = [init.0, init.1];
    for n in 0..=n_hi {
        let t = transfer_t(&coin(pair, freq, theta, n), l, z)?;
        v[at(n + 1)] = t.apply(v[at(n)]);
    }
    for n in (n_lo..0).rev() {
        let t = transfer_t(&coin(pair, freq, theta, n), l, z)?;
        let inv = t.inverse().ok_or_else(|| UamoError::singular("transfer matrix not invertible"))?;
        v[at(n)] = inv.apply(v[at(n + 1)]);
    }
    let sites = (n_hi - n_lo + 1) as usize;
    let plus = (0..sites).map(|i| v[i][0]).collect();
    let minus = (0..sites).map(|i| v[i + 1][1]).collect();
    SpinorField::from_components(n_lo, plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coin_matches_closed_form() {
        let l: f64 = 0.6;
        let lp = 0.8;
        let q = Coin2x2::from_cos_sin(0.0, 1.0, 1.0, 0.0);
        let z = C64::from_polar(1.0, 0.7);
        let t = transfer_t(&q, l, z).unwrap();
        let i = C64::new(0.0, 1.0);
        let expect = Mat2c::new(z.inv() / l + z * (lp * lp / l), -z * lp, -z * lp, z * l).scale(i);
        assert!(t.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn rejects_degenerate_input() {
        let q = Coin2x2::from_cos_sin(1.0, 0.0, 0.0, 1.0);
        let z = C64::new(1.0, 0.0);
        assert!(matches!(transfer_t(&q, 0.5, z), Err(UamoError::Singular(_))));
        let q = Coin2x2::from_cos_sin(0.5, 0.75f64.sqrt(), 1.0, 0.0);
        assert!(transfer_t(&q, 0.0, z).is_err());
        assert!(transfer_t(&q, 0.5, C64::new(0.0, 0.0)).is_err());
    }
}

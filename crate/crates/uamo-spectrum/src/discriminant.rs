use num_complex::Complex64 as C64;
use uamo_cocycle::{transfer_t, Mat2c};
use uamo_core::{CouplingPair, Frequency, Result, UamoError};
use uamo_walk::coin;

/// Moduli of `q¹¹ = λ₂c + iλ₂′` at or below this make the period phase
/// undefined.
const DIAGONAL_TOL: f64 = 1e-14;

fn period(freq: &Frequency) -> Result<u64> {
    freq.period()
        .ok_or_else(|| UamoError::invalid("the discriminant needs a rational frequency"))
}

/// `κ = Σ_{n<q} arg q¹¹_n`, so that `e^{iκ}` is a square root of the
/// determinant `Π q¹¹_n/q²²_n` of the one-period transfer matrix.
///
/// Band edges of the period-`q` walk are the Bloch eigenvalues at
/// quasi-momenta `κ` and `κ + π`.
pub fn period_phase(pair: &CouplingPair, freq: &Frequency, theta: f64) -> Result<f64> {
    let q = period(freq)?;
    let mut kappa = 0.0;
    for n in 0..q as i64 {
        let d = coin(pair, freq, theta, n).q11;
        if d.norm() <= DIAGONAL_TOL {
            return Err(UamoError::singular(format!("coin diagonal vanishes at site {n}")));
        }
        kappa += d.arg();
    }
    Ok(kappa)
}

/// One-period transfer matrix `T_z(q−1) ⋯ T_z(0)`.
pub fn monodromy(pair: &CouplingPair, freq: &Frequency, theta: f64, z: C64) -> Result<Mat2c> {
    let q = period(freq)?;
    let mut m = Mat2c::identity();
    for n in 0..q as i64 {
        m = transfer_t(&coin(pair, freq, theta, n), pair.lambda1(), z)? * m;
    }
    Ok(m)
}

/// `D(z) = tr M / √det M` for the one-period transfer matrix `M`, with the
/// square root `e^{iκ}` of [`period_phase`]. `z` lies in the spectrum of
/// the period-`q` walk iff `|D(z)| ≤ 2` (and `D` is then real).
pub fn discriminant(pair: &CouplingPair, freq: &Frequency, theta: f64, z: C64) -> Result<C64> {
    let m = monodromy(pair, freq, theta, z)?;
    let kappa = period_phase(pair, freq, theta)?;
    Ok(m.trace() * C64::from_polar(1.0, -kappa))
}

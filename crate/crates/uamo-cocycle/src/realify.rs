use num_complex::Complex64 as C64;
use uamo_core::{CouplingPair, Result, UamoError, TAU};

use crate::mat2::Mat2c;
use crate::variants::{CocycleA, CocycleMap, ComplexPhase};

/// `X(λ) = [[λ, λ′], [λ′, −λ]]`: Hermitian, involutive and traceless.
pub fn x_matrix(lambda: f64) -> Mat2c {
    let lp = ((1.0 - lambda) * (1.0 + lambda)).max(0.0).sqrt();
    Mat2c::real(lambda, lp, lp, -lambda)
}

/// The unitary `Y(λ)` with `Y(λ)* X(λ) Y(λ) = [[0, i], [−i, 0]]`:
///
/// ```text
/// Y(λ) = ½ [[√(1+λ) − i√(1−λ),  −√(1−λ) + i√(1+λ)],
///           [√(1−λ) + i√(1+λ),   √(1+λ) + i√(1−λ)]]
/// ```
pub fn y_matrix(lambda: f64) -> Mat2c {
    let p = (1.0 + lambda).sqrt();
    let m = (1.0 - lambda).max(0.0).sqrt();
    Mat2c::new(C64::new(p, -m), C64::new(-m, p), C64::new(m, p), C64::new(p, m)).scale(C64::new(0.5, 0.0))
}

fn check_domain(pair: &CouplingPair) -> Result<()> {
    if pair.lambda1() == 0.0 {
        return Err(UamoError::invalid("realification needs λ₁ > 0"));
    }
    if pair.lambda2() == 1.0 {
        return Err(UamoError::invalid(
            "realification needs λ₂ < 1 (no analytic square root of det A); use the B cocycle",
        ));
    }
    Ok(())
}

/// `A^ℛ = Y(λ₁)* (A/√det A) Y(λ₁)` at a complexified phase, where
/// `√det A = √(λ₂c + iλ₂′)/√(λ₂c − iλ₂′)` with principal roots taken factor
/// by factor.
pub fn realify_at(pair: &CouplingPair, z: C64, phase: &ComplexPhase) -> Result<Mat2c> {
    check_domain(pair)?;
    let a = CocycleA.eval(pair, z, phase)?;
    let c = phase.c() * pair.lambda2();
    let num = c + C64::new(0.0, pair.lambda2p());
    let den = c - C64::new(0.0, pair.lambda2p());
    let root = num.sqrt() / den.sqrt();
    let y = y_matrix(pair.lambda1());
    Ok(y.adjoint() * a.scale(root.inv()) * y)
}

/// `A^ℛ_z(θ)` at a real phase by conjugation. For `z ∈ ∂𝔻` the result is a
/// real matrix of determinant one (up to rounding).
pub fn realify(pair: &CouplingPair, z: C64, theta: f64) -> Result<Mat2c> {
    realify_at(pair, z, &ComplexPhase::new(theta, 0.0))
}

/// `A^ℛ_z(θ)` from its explicit entries:
///
/// ```text
/// 1/(λ₁√(λ₂′² + λ₂²c²)) [[Re z + λ₁′λ₂s,           λ₁Im z − λ₁′Re z − λ₂s],
///                        [−λ₁Im z − λ₁′Re z − λ₂s,  Re z + λ₁′λ₂s         ]]
/// ```
pub fn realify_closed_form(pair: &CouplingPair, z: C64, theta: f64) -> Result<[[f64; 2]; 2]> {
    check_domain(pair)?;
    let n = scaled_realified(pair, z, theta);
    let (l1, l2, l2p) = (pair.lambda1(), pair.lambda2(), pair.lambda2p());
    let c = (TAU * theta).cos();
    let k = 1.0 / (l1 * (l2p * l2p + l2 * l2 * c * c).sqrt());
    Ok([[k * n[0][0], k * n[0][1]], [k * n[1][0], k * n[1][1]]])
}

/// `N^ℛ = λ₁√(λ₂′² + λ₂²c²)·A^ℛ`, the positive multiple of `A^ℛ` with
/// polynomial entries.
fn scaled_realified(pair: &CouplingPair, z: C64, theta: f64) -> [[f64; 2]; 2] {
    let (l1, l1p, l2) = (pair.lambda1(), pair.lambda1p(), pair.lambda2());
    let s = (TAU * theta).sin();
    let diag = z.re + l1p * l2 * s;
    [[diag, l1 * z.im - l1p * z.re - l2 * s], [-l1 * z.im - l1p * z.re - l2 * s, diag]]
}

/// Coefficients `(a, b, c)` of `d/dt arg(A^ℛ_{e^{it}}(θ)v_u) ∝ a cos²u +
/// b sin²u + 2c sin u cos u`:
/// `a = λ₁(1 + λ₂s(λ₁′Re z + λ₁Im z))`, `b = λ₁(1 − λ₂s(−λ₁′Re z + λ₁Im z))`,
/// `c = −λ₁(λ₁′ + λ₂s Re z)`.
pub fn monotonicity_coefficients(pair: &CouplingPair, z: C64, theta: f64) -> (f64, f64, f64) {
    let (l1, l1p, l2) = (pair.lambda1(), pair.lambda1p(), pair.lambda2());
    let s = (TAU * theta).sin();
    let a = l1 * (1.0 + l2 * s * (l1p * z.re + l1 * z.im));
    let b = l1 * (1.0 - l2 * s * (-l1p * z.re + l1 * z.im));
    let c = -l1 * (l1p + l2 * s * z.re);
    (a, b, c)
}

/// `λ₁⁴(1 − λ₂² sin²(2πθ))`, the closed form of `ab − c²`.
pub fn monotonicity_discriminant(pair: &CouplingPair, theta: f64) -> f64 {
    let s = (TAU * theta).sin();
    pair.lambda1().powi(4) * (1.0 - pair.lambda2().powi(2) * s * s)
}

/// Minima of the `t`-derivative of the angle of `A^ℛ_{e^{it}}(θ)v_u` over a
/// grid, where the angle of `(y₂, y₁)` is `atan2(y₂, y₁)` (first component
/// over second).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgumentDerivative {
    /// Minimum of the central finite difference.
    pub min_finite_difference: f64,
    /// Minimum of the analytic derivative `(a cos²u + b sin²u + 2c sin u cos u)/|N^ℛ v_u|²`.
    pub min_analytic: f64,
    /// Largest gap between the two derivatives.
    pub max_discrepancy: f64,
    /// Minimum of `ab − c²` over the `t` grid.
    pub min_discriminant: f64,
}

/// Samples `t = 2πj/t_grid` and `u = πk/u_grid` (vectors `v_u = (cos u, sin u)`
/// cover every direction up to sign) at the fixed phase `θ`.
pub fn argument_derivative_check(
    pair: &CouplingPair,
    theta: f64,
    u_grid: usize,
    t_grid: usize,
) -> Result<ArgumentDerivative> {
    check_domain(pair)?;
    if u_grid == 0 || t_grid == 0 {
        return Err(UamoError::invalid("grids must be non-empty"));
    }
    let angle = |t: f64, u: f64| {
        let n = scaled_realified(pair, C64::from_polar(1.0, t), theta);
        let (cu, su) = (u.cos(), u.sin());
        let y2 = n[0][0] * cu + n[0][1] * su;
        let y1 = n[1][0] * cu + n[1][1] * su;
        (y2.atan2(y1), y1 * y1 + y2 * y2)
    };
    let h = 1e-6;
    let mut out = ArgumentDerivative {
        min_finite_difference: f64::INFINITY,
        min_analytic: f64::INFINITY,
        max_discrepancy: 0.0,
        min_discriminant: f64::INFINITY,
    };
    for j in 0..t_grid {
        let t = TAU * j as f64 / t_grid as f64;
        let z = C64::from_polar(1.0, t);
        let (a, b, c) = monotonicity_coefficients(pair, z, theta);
        out.min_discriminant = out.min_discriminant.min(a * b - c * c);
        for k in 0..u_grid {
            let u = std::f64::consts::PI * k as f64 / u_grid as f64;
            let (plus, _) = angle(t + h, u);
            let (minus, _) = angle(t - h, u);
            let mut diff = plus - minus;
            if diff > std::f64::consts::PI {
                diff -= TAU;
            } else if diff < -std::f64::consts::PI {
                diff += TAU;
            }
            let fd = diff / (2.0 * h);
            let (_, r2) = angle(t, u);
            let (cu, su) = (u.cos(), u.sin());
            let analytic = (a * cu * cu + b * su * su + 2.0 * c * su * cu) / r2;
            out.min_finite_difference = out.min_finite_difference.min(fd);
            out.min_analytic = out.min_analytic.min(analytic);
            out.max_discrepancy = out.max_discrepancy.max((fd - analytic).abs());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_and_y_identities() {
        for l in [0.0, 0.3, 1.0] {
            let x = x_matrix(l);
            let y = y_matrix(l);
            assert!((y.adjoint() * y).max_abs_diff(&Mat2c::identity()) < 1e-15);
            assert!((x * x).max_abs_diff(&Mat2c::identity()) < 1e-15);
            assert!(x.trace().norm() < 1e-15);
            assert!(x.adjoint().max_abs_diff(&x) < 1e-15);
            let target = Mat2c::new(C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(0.0, 0.0));
            assert!((y.adjoint() * x * y).max_abs_diff(&target) < 1e-15);
        }
    }

    #[test]
    fn refuses_critical_coin() {
        let pair = CouplingPair::new(0.5, 1.0).unwrap();
        assert!(realify(&pair, C64::new(1.0, 0.0), 0.1).is_err());
    }

    #[test]
    fn discriminant_degenerates_at_full_coupling() {
        let pair = CouplingPair::new(0.5, 1.0 - 1e-9).unwrap();
        assert!(monotonicity_discriminant(&pair, 0.25) < 1e-9);
    }
}

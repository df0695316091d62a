use std::f64::consts::PI;

use uamo_core::{Result, UamoError, TAU};

/// `ε₀(λ) = arcsinh(λ′/λ)/(2π)`, the imaginary phase shift at which the
/// A-cocycle denominator `λc(θ+iε) − iλ′` vanishes. Infinite at `λ = 0`.
pub fn epsilon0(lambda: f64) -> f64 {
    if lambda == 0.0 {
        return f64::INFINITY;
    }
    let lp = ((1.0 - lambda) * (1.0 + lambda)).max(0.0).sqrt();
    (lp / lambda).asinh() / TAU
}

/// Closed form of `G(t, ε) = ∫₀¹ log|t cos(2π(θ+iε)) − i√(1−t²)| dθ`:
/// `log[(1+√(1−t²))/2] + 2π·max{0, |ε| − ε₀(t)}`.
pub fn log_integral_closed(t: f64, eps: f64) -> Result<f64> {
    check_t(t)?;
    let tp = ((1.0 - t) * (1.0 + t)).sqrt();
    let excess = (eps.abs() - epsilon0(t)).max(0.0);
    Ok(((1.0 + tp) / 2.0).ln() + TAU * excess)
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(UamoError::invalid(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(())
}

/// `log|t cos(2π(θ_s+δ+iε)) − it′|` for a base point `θ_s ∈ {¼, ¾}` and
/// offset `δ`. The only zeros of the integrand lie at `θ_s`, so offsets are
/// kept exact rather than rounded into `θ`.
fn integrand(t: f64, tp: f64, eps: f64, at_quarter: bool, delta: f64) -> f64 {
    let (sd, cd) = (TAU * delta).sin_cos();
    let (cos_x, sin_x) = if at_quarter { (-sd, cd) } else { (sd, -cd) };
    let y = TAU * eps;
    let re = t * cos_x * y.cosh();
    let im = t * sin_x * y.sinh() + tp;
    re.hypot(im).ln()
}

/// Tanh-sinh sum over `[θ_a, θ_a + ½]` with singular candidates at both
/// ends, at step `h` (only the nodes new at this level when `odd_only`).
fn tanh_sinh_level(f: &dyn Fn(bool, f64) -> f64, left_quarter: bool, h: f64, odd_only: bool) -> f64 {
    const HALF: f64 = 0.25;
    let mut sum = 0.0;
    let kmax = (6.5 / h).ceil() as i64;
    for k in -kmax..=kmax {
        if odd_only && k % 2 == 0 {
            continue;
        }
        let u = k as f64 * h;
        let v = 0.5 * PI * u.sinh();
        let e = (-2.0 * v.abs()).exp();
        // Distance from the nearer endpoint, computed without cancellation.
        let offset = HALF * 2.0 * e / (1.0 + e);
        if offset == 0.0 {
            continue;
        }
        let weight = HALF * 0.5 * PI * u.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if weight < 1e-300 {
            continue;
        }
        let value = if u < 0.0 { f(left_quarter, offset) } else { f(!left_quarter, -offset) };
        sum += weight * value;
    }
    sum * h
}

/// Numerical value of `G(t, ε)` by tanh-sinh quadrature on the two
/// half-periods `[¼, ¾]` and `[¾, 5/4]`, whose endpoints carry every
/// (near-)singularity of the integrand. Levels are refined until successive
/// estimates agree to `tol`.
pub fn log_integral_quadrature(t: f64, eps: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    if !eps.is_finite() || tol.is_nan() || tol <= 0.0 {
        return Err(UamoError::invalid("ε must be finite and tol positive"));
    }
    let tp = ((1.0 - t) * (1.0 + t)).sqrt();
    let f = move |quarter: bool, delta: f64| integrand(t, tp, eps, quarter, delta);
    let mut h = 0.5;
    let mut estimate = tanh_sinh_level(&f, true, h, false) + tanh_sinh_level(&f, false, h, false);
    for _ in 0..10 {
        h /= 2.0;
        let fresh = tanh_sinh_level(&f, true, h, true) + tanh_sinh_level(&f, false, h, true);
        let next = 0.5 * estimate + fresh;
        if (next - estimate).abs() <= tol * 1e-2 {
            return Ok(next);
        }
        estimate = next;
    }
    Err(UamoError::NonConvergence(format!("log-integral quadrature at t = {t}, ε = {eps}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon0_values() {
        assert!((epsilon0(std::f64::consts::FRAC_1_SQRT_2) - 0.1403).abs() < 5e-5);
        assert_eq!(epsilon0(1.0), 0.0);
        assert!(epsilon0(0.0).is_infinite());
    }

    #[test]
    fn closed_form_special_values() {
        assert_eq!(log_integral_closed(0.0, 0.3).unwrap(), 0.0);
        assert!((log_integral_closed(1.0, 0.0).unwrap() + std::f64::consts::LN_2).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((log_integral_closed(s, 0.0).unwrap() - ((1.0 + s) / 2.0).ln()).abs() < 1e-15);
        assert!(log_integral_closed(1.1, 0.0).is_err());
    }

    #[test]
    fn quadrature_of_log_cos() {
        let g = log_integral_quadrature(1.0, 0.0, 1e-10).unwrap();
        assert!((g + std::f64::consts::LN_2).abs() < 1e-10, "{g}");
    }
}

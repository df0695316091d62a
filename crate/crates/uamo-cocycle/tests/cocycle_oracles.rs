//! Transfer matrices and cocycle variants against independent constructions:
//! dense eigenequation rows, explicit matrix products, closed-form
//! realification and the exact log-integral.

use faer::Mat;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uamo_cocycle::*;
use uamo_core::{CouplingPair, Frequency, TAU};
use uamo_walk::{coin, dense_window_matrix, Basis, Coin2x2};

fn unit(t: f64) -> C64 {
    C64::from_polar(1.0, t)
}

fn random_pair(rng: &mut ChaCha8Rng) -> CouplingPair {
    CouplingPair::new(rng.random_range(0.05..1.0), rng.random_range(0.0..1.0)).unwrap()
}

#[test]
fn transfer_determinant_is_coin_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let pair = random_pair(&mut rng);
        let q = Coin2x2::from_cos_sin(pair.lambda2(), pair.lambda2p(), 0.0, 1.0);
        let theta: f64 = rng.random();
        let q = if rng.random_bool(0.5) { q } else { coin(&pair, &Frequency::golden(), theta, rng.random_range(-50..50)) };
        if q.q22.norm() < 1e-3 {
            continue;
        }
        let z = C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU));
        let t = transfer_t(&q, pair.lambda1(), z).unwrap();
        assert!((t.det() - q.q11 / q.q22).norm() < 1e-12);
    }
}

#[test]
fn transfer_solutions_satisfy_dense_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let pair = random_pair(&mut rng);
        let freq = Frequency::real(rng.random_range(0.1..0.9)).unwrap();
        let theta: f64 = rng.random();
        let z = unit(rng.random_range(0.0..TAU));
        let init = (C64::new(rng.random(), rng.random()), C64::new(rng.random(), rng.random()));
        let m = 10;
        let Ok(psi) = solve_by_transfer(&pair, &freq, theta, z, init, -m, m) else {
            continue;
        };
        let basis = Basis::new(-m, m).unwrap();
        let dense: Mat<C64> = dense_window_matrix(&pair, &freq, theta, basis);
        let v = basis.to_vector(&psi);
        let scale = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for n in -m + 1..m {
            for up in [true, false] {
                let row = basis.index(n, up).unwrap();
                let wv: C64 = (0..basis.dim()).map(|j| dense[(row, j)] * v[j]).sum();
                let r = (wv - z * v[row]).norm() / scale;
                assert!(r < 1e-10, "row {n} {up}: {r}");
            }
        }
    }
}

#[test]
fn regularized_cocycle_is_scalar_multiple() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let pair = random_pair(&mut rng);
        let z = C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU));
        let phase = ComplexPhase::new(rng.random(), rng.random_range(-0.3..0.3));
        let Ok(a) = CocycleA.eval(&pair, z, &phase) else { continue };
        let b = CocycleB.eval(&pair, z, &phase).unwrap();
        let f = (phase.c() * pair.lambda2() - C64::new(0.0, pair.lambda2p())) * (2.0 / (1.0 + pair.lambda2p()));
        assert!(b.max_abs_diff(&a.scale(f)) < 1e-10 * b.max_abs().max(1.0));
    }
}

#[test]
fn cocycle_on_real_phase_is_normalized_transfer() {
    // The coin at site 0 and phase θ has q²² = λ₂c − iλ₂′ and det Q = 1, so
    // the one-site transfer matrix is exactly A_z(θ).
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..200 {
        let pair = random_pair(&mut rng);
        let theta: f64 = rng.random();
        let z = unit(rng.random_range(0.0..TAU));
        let q = coin(&pair, &Frequency::golden(), theta, 0);
        let Ok(t) = transfer_t(&q, pair.lambda1(), z) else { continue };
        let a = CocycleA.eval(&pair, z, &ComplexPhase::new(theta, 0.0)).unwrap();
        assert!(a.max_abs_diff(&t) < 1e-9 * t.max_abs(), "{:?} vs {:?}", a, t);
    }
}

#[test]
fn dual_cocycle_on_the_circle() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..200 {
        let pair = random_pair(&mut rng);
        if pair.lambda2() < 0.05 {
            continue;
        }
        let z = unit(rng.random_range(0.0..TAU));
        let phase = ComplexPhase::new(rng.random(), 0.0);
        let sharp = CocycleASharp.eval(&pair, z, &phase).unwrap();
        let direct = CocycleA.eval(&pair.swapped(), z, &phase).unwrap().conj();
        assert!(sharp.max_abs_diff(&direct) < 1e-12);
        assert!((sharp.det().norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn renormalized_product_matches_explicit_product() {
    let pair = CouplingPair::new(0.5, std::f64::consts::FRAC_1_SQRT_2).unwrap();
    let freq = Frequency::golden();
    for name in ["A", "B", "A_sharp", "A_realified"] {
        let spec = CocycleSpec::new(name, pair, unit(0.7), 0.05).unwrap();
        let n = 40;
        let mut explicit = Mat2c::identity();
        let mut det = C64::new(1.0, 0.0);
        for j in 0..n {
            let m = spec.eval(freq.orbit_phase(j, 0.23)).unwrap();
            explicit = m * explicit;
            det *= m.det();
        }
        let (p, log_scale) = iterate(&spec, &freq, 0.23, n as u64).unwrap();
        let rebuilt = p.scale(C64::new(log_scale.exp(), 0.0));
        assert!(rebuilt.max_abs_diff(&explicit) < 1e-9 * explicit.max_abs(), "{name}: {} {}", rebuilt.max_abs_diff(&explicit), explicit.max_abs());
        let det_rebuilt = p.det() * (2.0 * log_scale).exp();
        // The determinant of a nearly rank-one product cancels down to the
        // scale of its squared entries.
        assert!((det_rebuilt - det).norm() < 1e-12 * explicit.max_abs().powi(2), "{name}");
        assert!((p.max_abs() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn integral_lemma_on_grid() {
    let ts: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let eps: Vec<f64> = (-3..=3).map(|k| k as f64 / 10.0).collect();
    for &t in &ts {
        for &e in &eps {
            let q = log_integral_quadrature(t, e, 1e-10).unwrap();
            let c = log_integral_closed(t, e).unwrap();
            assert!((q - c).abs() < 1e-8, "t={t} ε={e}: {q} vs {c}");
        }
    }
    let g = log_integral_quadrature(1.0, 0.0, 1e-10).unwrap();
    assert!((g + std::f64::consts::LN_2).abs() < 1e-8);
}

#[test]
fn realification_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..500 {
        let pair = CouplingPair::new(rng.random_range(0.05..1.0), rng.random_range(0.0..0.99)).unwrap();
        let z = unit(rng.random_range(0.0..TAU));
        let theta: f64 = rng.random();
        let r = realify(&pair, z, theta).unwrap();
        let closed = realify_closed_form(&pair, z, theta).unwrap();
        assert!(r.max_imag() < 1e-12);
        assert!((r.det() - C64::new(1.0, 0.0)).norm() < 1e-12 * r.max_abs().powi(2).max(1.0), "{}", (r.det() - 1.0).norm());
        let explicit = Mat2c::real(closed[0][0], closed[0][1], closed[1][0], closed[1][1]);
        assert!(r.max_abs_diff(&explicit) < 1e-10 * explicit.max_abs());
    }
}

#[test]
fn cocycle_preserves_hermitian_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let yy = Mat2c::new(C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(0.0, 0.0));
    for _ in 0..300 {
        let pair = CouplingPair::new(rng.random_range(0.05..1.0), rng.random_range(0.0..0.99)).unwrap();
        let z = unit(rng.random_range(0.0..TAU));
        let a = CocycleA.eval(&pair, z, &ComplexPhase::new(rng.random(), 0.0)).unwrap();
        let x = x_matrix(pair.lambda1());
        assert!((a.adjoint() * x * a).max_abs_diff(&x) < 1e-10 * a.max_abs().powi(2));
        let y = y_matrix(pair.lambda1());
        assert!((y.adjoint() * x * y).max_abs_diff(&yy) < 1e-14);
    }
}

#[test]
fn argument_derivative_is_positive() {
    for (l1, l2) in [(0.5, std::f64::consts::FRAC_1_SQRT_2), (std::f64::consts::FRAC_1_SQRT_2, 0.5), (0.3, 0.9), (0.9, 0.3), (1.0, 0.0)] {
        let pair = CouplingPair::new(l1, l2).unwrap();
        for theta in [0.0, 0.125, 0.25, 0.6] {
            let r = argument_derivative_check(&pair, theta, 64, 64).unwrap();
            assert!(r.min_finite_difference > 0.0, "{l1},{l2},{theta}: {r:?}");
            assert!(r.min_analytic > 0.0);
            assert!(r.max_discrepancy < 1e-5);
            assert!(r.min_discriminant > 0.0);
        }
    }
}

#[test]
fn herman_radius_and_bound() {
    let pair = CouplingPair::new(0.5, std::f64::consts::FRAC_1_SQRT_2).unwrap();
    let zs: Vec<C64> = (0..4).map(|k| unit(TAU * k as f64 / 4.0 + 0.1)).collect();
    let report = herman_check(&pair, &Frequency::golden(), &zs, 20_000, 0.0).unwrap();
    assert!(report.worst_margin > -0.02, "{report:?}");
    assert!((herman_spectral_radius(0.5) - (1.0 + 0.75f64.sqrt())).abs() < 1e-15);
}

#[test]
fn lyapunov_estimator_on_constant_cocycle() {
    // λ₂ = 0: B is the constant matrix 2·numerator/(1+1) with eigenvalues
    // solving μ² − tr μ + det = 0; the exponent is log of the larger modulus.
    let pair = CouplingPair::new(0.6, 0.0).unwrap();
    for t in [0.3, 1.2, 2.0] {
        let spec = CocycleSpec::new("B", pair, unit(t), 0.0).unwrap();
        let m = spec.eval(0.0).unwrap();
        let (tr, det) = (m.trace(), m.det());
        let disc = (tr * tr - det * 4.0).sqrt();
        let mu = ((tr + disc) / 2.0).norm().max(((tr - disc) / 2.0).norm());
        let est = lyapunov_estimate(&spec, &Frequency::golden(), 10_000, 0.0, 100).unwrap();
        assert!((est.value - mu.ln()).abs() < 1e-3, "t={t}: {} vs {}", est.value, mu.ln());
    }
    let spec = CocycleSpec::new("B", pair, unit(0.3), 0.0).unwrap();
    assert!(lyapunov_estimate(&spec, &Frequency::golden(), 9_999, 0.0, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reflection_symmetry(l1 in 0.05f64..1.0, l2 in 0.05f64..1.0, theta in 0.0f64..1.0, t in 0.0f64..TAU) {
        let pair = CouplingPair::new(l1, l2).unwrap();
        if let Ok(r) = reflection_check(&pair, unit(t), theta) {
            prop_assert!(r < 1e-12 * (1.0 / (l1 * l2)).max(1.0), "{}", r);
        }
    }

    #[test]
    fn acceleration_of_b_at_large_epsilon(l1 in 0.2f64..1.0, l2 in 0.2f64..1.0, t in 0.0f64..TAU) {
        // For |ε| beyond every kink the exponent is 2π|ε| + log λ₀.
        let pair = CouplingPair::new(l1, l2).unwrap();
        let spec = CocycleSpec::new("B", pair, unit(t), 1.0).unwrap();
        let est = lyapunov_estimate(&spec, &Frequency::golden(), 10_000, 0.0, 200).unwrap();
        let expect = TAU + pair.lambda0().ln().unwrap();
        prop_assert!((est.value - expect).abs() < 1e-3, "{} vs {}", est.value, expect);
    }
}

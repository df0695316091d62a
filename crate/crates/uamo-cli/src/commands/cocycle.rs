use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use uamo_cocycle::{
    acceleration_profile, argument_derivative_check, default_epsilon_grid, log_integral_closed,
    log_integral_quadrature, lyapunov_estimate, lyapunov_exact, lyapunov_table, realify, reflection_check,
    CocycleSpec, LyapunovRow,
};
use uamo_core::io::{Cell, CsvTable};
use uamo_core::{CouplingPair, Frequency, TAU};

use super::{spectrum_points, Experiment, Outcome, Payload};
use crate::error::CliError;
use crate::params::Resolved;

const SUPERCRITICAL: (f64, f64) = (0.5, std::f64::consts::FRAC_1_SQRT_2);

/// Spectral angles from `--z`: `auto-spectrum` or a comma-separated list.
fn z_angles(params: &Resolved, pair: &CouplingPair, freq: &Frequency, theta: f64, default_count: u64) -> Result<Vec<f64>, CliError> {
    let z = params.text("z", params.params.z.as_ref(), "auto-spectrum");
    if z == "auto-spectrum" {
        let count = params.int("z-count", params.params.z_count, default_count, (1, 64))?;
        return spectrum_points(params, pair, freq, theta, count);
    }
    z.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|a| a.is_finite())
                .ok_or_else(|| CliError::Usage(format!("--z: cannot parse angle {s:?}")))
        })
        .collect()
}

pub struct Lyapunov;

impl Experiment for Lyapunov {
    fn name(&self) -> &'static str {
        "lyapunov"
    }

    fn about(&self) -> &'static str {
        "Lyapunov exponent of the transfer cocycle at chosen spectral parameters"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(SUPERCRITICAL)?;
        let freq = params.freq("golden")?;
        let theta = params.theta()?;
        let n = params.int("n", params.params.n, 1_000_000, (10_000, 1_000_000_000))?;
        let variant = params.text("variant", params.params.variant.as_ref(), "B");
        let eps = params.real("epsilon", params.params.epsilon, 0.0, (-10.0, 10.0))?;
        let angles = z_angles(params, &pair, &freq, theta, 3)?;
        let out = params.out("lyapunov.csv");
        let rows = angles
            .par_iter()
            .map(|&a| {
                let spec = CocycleSpec::new(&variant, pair, C64::from_polar(1.0, a), eps)?;
                Ok(LyapunovRow { z_angle: a, epsilon: eps, estimate: lyapunov_estimate(&spec, &freq, n, theta, n / 10)? })
            })
            .collect::<uamo_core::Result<Vec<_>>>()?;
        let mean = rows.iter().map(|r| r.estimate.value).sum::<f64>() / rows.len() as f64;
        let mut summary = vec![("L_mean", json!(mean))];
        if let Ok(exact) = lyapunov_exact(&pair) {
            summary.push(("L_on_spectrum", json!(exact)));
        }
        Ok(Outcome { out, payload: Payload::Csv(lyapunov_table(&rows)), summary, failure: None })
    }
}

pub struct Acceleration;

impl Experiment for Acceleration {
    fn name(&self) -> &'static str {
        "acceleration"
    }

    fn about(&self) -> &'static str {
        "Complexified Lyapunov exponent ε ↦ L(ε) with fitted affine pieces and accelerations"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(SUPERCRITICAL)?;
        let freq = params.freq("golden")?;
        let theta = params.theta()?;
        let n = params.int("n", params.params.n, 100_000, (10_000, 1_000_000_000))?;
        let variant = params.text("variant", params.params.variant.as_ref(), "B");
        let angle = z_angles(params, &pair, &freq, theta, 1)?[0];
        let p = &params.params;
        let grid = match (p.eps_min, p.eps_max, p.eps_count) {
            (None, None, None) => {
                params.record("eps_grid", "default");
                default_epsilon_grid(pair.lambda2())
            }
            _ => {
                let lo = params.real("eps-min", p.eps_min, -0.35, (-10.0, 10.0))?;
                let hi = params.real("eps-max", p.eps_max, 0.35, (-10.0, 10.0))?;
                let count = params.int("eps-count", p.eps_count, 41, (3, 10_000))?;
                if hi <= lo {
                    return Err(CliError::Usage("--eps-max must exceed --eps-min".into()));
                }
                (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect()
            }
        };
        let out = params.out("acceleration.csv");
        let spec = CocycleSpec::new(&variant, pair, C64::from_polar(1.0, angle), 0.0)?;
        let profile = acceleration_profile(&spec, &freq, &grid, n, theta)?;
        let omegas: Vec<i64> = profile.fitted_segments().map(|s| s.omega()).collect();
        let mut summary = vec![
            ("z_angle", json!(angle)),
            ("omegas", json!(omegas)),
            ("max_quantization_error", json!(profile.max_quantization_error())),
        ];
        if let Ok(a) = profile.asymmetry() {
            summary.push(("asymmetry", json!(a)));
        }
        Ok(Outcome { out, payload: Payload::Csv(profile.to_csv()), summary, failure: None })
    }
}

pub struct CocycleVerify;

struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
    pass: bool,
}

impl Experiment for CocycleVerify {
    fn name(&self) -> &'static str {
        "cocycle-verify"
    }

    fn about(&self) -> &'static str {
        "Identity checks for the cocycles: reflection, realification, monotonicity, log-integral"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(SUPERCRITICAL)?;
        let samples = params.int("samples", params.params.samples, 1000, (1, 10_000_000))?;
        let seed = params.int("seed", params.params.seed, 7, (0, u64::MAX))?;
        let out = params.out("cocycle_verify.csv");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checks = Vec::new();

        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let theta: f64 = rng.random();
            let z = C64::from_polar(1.0, TAU * rng.random::<f64>());
            match reflection_check(&pair, z, theta) {
                Ok(r) => worst = worst.max(r),
                Err(uamo_core::UamoError::Singular(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        checks.push(Check { name: "reflection", value: worst, tolerance: 1e-12, pass: worst < 1e-12 });

        if pair.lambda1() > 0.0 && pair.lambda2() < 1.0 {
            let (mut imag, mut det): (f64, f64) = (0.0, 0.0);
            for _ in 0..samples {
                let theta: f64 = rng.random();
                let z = C64::from_polar(1.0, TAU * rng.random::<f64>());
                let r = realify(&pair, z, theta)?;
                imag = imag.max(r.max_imag());
                det = det.max((r.det() - 1.0).norm());
            }
            checks.push(Check { name: "realified_imaginary_part", value: imag, tolerance: 1e-12, pass: imag < 1e-12 });
            checks.push(Check { name: "realified_det_minus_one", value: det, tolerance: 1e-12, pass: det < 1e-12 });
            let mut min_derivative = f64::INFINITY;
            for theta in [0.0, 0.125, 0.3, 0.61] {
                min_derivative = min_derivative.min(argument_derivative_check(&pair, theta, 64, 64)?.min_finite_difference);
            }
            checks.push(Check { name: "min_argument_derivative", value: min_derivative, tolerance: 0.0, pass: min_derivative > 0.0 });
        }

        let mut worst_integral: f64 = 0.0;
        for t in [0.25, 0.5, 0.75, 1.0] {
            for eps in [0.0, 0.1, 0.3] {
                let quad = log_integral_quadrature(t, eps, 1e-12)?;
                worst_integral = worst_integral.max((quad - log_integral_closed(t, eps)?).abs());
            }
        }
        checks.push(Check { name: "log_integral", value: worst_integral, tolerance: 1e-8, pass: worst_integral < 1e-8 });

        let mut table = CsvTable::new(&["check", "value", "tolerance", "pass"]);
        for c in &checks {
            table.push(vec![Cell::Text(c.name.into()), c.value.into(), c.tolerance.into(), Cell::Int(i64::from(c.pass))]);
        }
        let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        Ok(Outcome {
            out,
            payload: Payload::Csv(table),
            summary: vec![("checks", json!(checks.len())), ("failed", json!(failed))],
            failure: (!failed.is_empty()).then(|| format!("verification failed: {}", failed.join(", "))),
        })
    }
}

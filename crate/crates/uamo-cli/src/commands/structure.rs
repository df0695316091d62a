use serde_json::json;
use uamo_cmv::{cmv_equals_walk, verblunsky_json, walk_to_verblunsky};
use uamo_duality::{
    duality_sweep, duality_table, localized_eigenpairs, summarize, tail_mass, truncate, truncation_radius, xi_grid,
};
use uamo_walk::{evolve, scaling_exponent, Spin, SpinorField};

use super::{rational_stand_in, Experiment, Outcome, Payload};
use crate::error::CliError;
use crate::params::Resolved;

const CRITICAL: (f64, f64) = (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
const SUPERCRITICAL: (f64, f64) = (0.5, std::f64::consts::FRAC_1_SQRT_2);

/// Entries of `E = LM` may differ from the reordered walk by rounding only.
const CMV_TOL: f64 = 1e-12;

pub struct Dynamics;

impl Experiment for Dynamics {
    fn name(&self) -> &'static str {
        "dynamics"
    }

    fn about(&self) -> &'static str {
        "Spreading of δ₀⁺ under the walk: position moments and the tail scaling exponent of σ(t)"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(CRITICAL)?;
        let freq = params.freq("golden")?;
        let theta = params.theta()?;
        let steps = params.int("steps", params.params.steps, 1000, (1, 1_000_000))?;
        params.record("initial_state", "delta_0_up");
        let out = params.out("dynamics.csv");
        let series = evolve(&pair, &freq, theta, &SpinorField::delta(0, Spin::Up), steps)?;
        let sigma = series.sigma();
        let mut summary = vec![
            ("sigma_final", json!(sigma.last().copied().unwrap_or(0.0))),
            ("sigma_max", json!(sigma.iter().copied().fold(0.0, f64::max))),
            ("norm_drift", json!(series.norm_drift())),
        ];
        if steps >= 30 {
            if let Ok(fit) = scaling_exponent(&series, steps / 10, steps) {
                summary.push(("tail_slope", json!(fit.slope)));
            }
        }
        Ok(Outcome { out, payload: Payload::Csv(series.to_csv()), summary, failure: None })
    }
}

pub struct Duality;

impl Experiment for Duality {
    fn name(&self) -> &'static str {
        "duality"
    }

    fn about(&self) -> &'static str {
        "Dual solutions of the most localized eigenvector and their residuals over a ξ grid"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(SUPERCRITICAL)?;
        let freq = rational_stand_in(&params.freq("89/144")?, 610)?;
        params.record("phi_used", freq.to_string());
        let theta = params.theta()?;
        let tau = params.real("tau", params.params.tau, 1e-8, (1e-300, 1e-2))?;
        let xi_count = params.int("xi-count", params.params.xi_count, 16, (1, 4096))?;
        let half_width = params.int("half-width", params.params.half_width, 100, (2, 100_000))?;
        let out = params.out("duality.csv");
        let eig = localized_eigenpairs(&pair, &freq, theta, usize::MAX)?
            .into_iter()
            .find(|e| !e.degenerate)
            .ok_or_else(|| CliError::Numerical("every eigenvalue is degenerate".into()))?;
        let radius = truncation_radius(&eig.psi, tau);
        let mass = tail_mass(&eig.psi, radius);
        let psi = truncate(&eig.psi, radius)?;
        let rows = duality_sweep(&pair, &freq, theta, eig.z, &psi, mass, &xi_grid(xi_count as usize), half_width as i64)?;
        let s = summarize(&rows);
        Ok(Outcome {
            out,
            payload: Payload::Csv(duality_table(&rows)),
            summary: vec![
                ("z_angle", json!(eig.z.arg())),
                ("participation", json!(eig.participation)),
                ("decay_rate", json!(eig.decay_rate)),
                ("truncation_radius", json!(radius)),
                ("tail_mass", json!(mass)),
                ("residual_max", json!(s.residual_max)),
                ("residual_median", json!(s.residual_median)),
            ],
            failure: None,
        })
    }
}

pub struct CmvCheck;

impl Experiment for CmvCheck {
    fn name(&self) -> &'static str {
        "cmv-check"
    }

    fn about(&self) -> &'static str {
        "Verblunsky pairs of the walk and the entrywise comparison W = LM"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(CRITICAL)?;
        let freq = params.freq("golden")?;
        let theta = params.theta()?;
        let m = params.int("half-width", params.params.half_width, 20, (3, 2000))? as i64;
        let out = params.out("cmv.json");
        let deviation = cmv_equals_walk(&pair, &freq, theta, m)?;
        let pairs = walk_to_verblunsky(&pair, &freq, theta, -m, m);
        let sphere = pairs.iter().map(|p| p.sphere_residual()).fold(0.0, f64::max);
        Ok(Outcome {
            out,
            payload: Payload::Json(verblunsky_json(&pairs)),
            summary: vec![("max_deviation", json!(deviation)), ("max_sphere_residual", json!(sphere))],
            failure: (deviation >= CMV_TOL).then(|| format!("W and LM differ by {deviation:e}")),
        })
    }
}

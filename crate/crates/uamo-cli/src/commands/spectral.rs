use serde_json::json;
use uamo_core::Frequency;
use uamo_spectrum::{band_measure_trend, butterfly, butterfly_table, ThetaMode};
use uamo_walk2d::{spectrum_table, walk2d_build, walk2d_spectrum};

use super::{Experiment, Outcome, Payload};
use crate::error::CliError;
use crate::params::Resolved;

const CRITICAL: (f64, f64) = (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);

fn theta_mode(params: &Resolved) -> Result<ThetaMode, CliError> {
    let phases = params.int("phases", params.params.phases, 8, (1, 1024))?;
    Ok(if phases == 1 { ThetaMode::Fixed(params.theta()?) } else { ThetaMode::Union(phases as usize) })
}

pub struct Butterfly;

impl Experiment for Butterfly {
    fn name(&self) -> &'static str {
        "butterfly"
    }

    fn about(&self) -> &'static str {
        "Band sets for all p/q with q ≤ qmax (Hofstadter-type butterfly)"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(CRITICAL)?;
        let qmax = params.int("qmax", params.params.qmax, 21, (2, 233))?;
        let mode = theta_mode(params)?;
        let k = params.int("k-per-q", params.params.k_per_q, 8, (8, 1024))?;
        let out = params.out("butterfly.csv");
        let rows = butterfly(&pair, qmax, mode, k as usize)?;
        let arcs: usize = rows.iter().map(|r| r.set.arcs().len()).sum();
        Ok(Outcome {
            out,
            payload: Payload::Csv(butterfly_table(&rows)),
            summary: vec![("frequencies", json!(rows.len())), ("arcs", json!(arcs))],
            failure: None,
        })
    }
}

pub struct MeasureTrend;

impl Experiment for MeasureTrend {
    fn name(&self) -> &'static str {
        "measure-trend"
    }

    fn about(&self) -> &'static str {
        "Band measure along the continued-fraction convergents of Φ"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(CRITICAL)?;
        let freq = params.freq("golden")?;
        let qmax = params.int("qmax", params.params.qmax, 55, (2, 987))?;
        let mode = theta_mode(params)?;
        let k = params.int("k-per-q", params.params.k_per_q, 8, (8, 1024))?;
        let out = params.out("measure_trend.csv");
        let convergents: Vec<(u64, u64)> = freq
            .convergents(64)
            .into_iter()
            .filter(|&(_, q)| (5..=qmax).contains(&q))
            .collect();
        if convergents.is_empty() {
            return Err(CliError::Usage(format!("Φ = {freq} has no convergent with 5 ≤ q ≤ {qmax}")));
        }
        let trend = band_measure_trend(&pair, &convergents, mode, k as usize)?;
        Ok(Outcome {
            out,
            summary: vec![
                ("strictly_decreasing", json!(trend.strictly_decreasing())),
                ("final_ratio", json!(trend.final_ratio())),
            ],
            payload: Payload::Csv(trend.to_csv()),
            failure: None,
        })
    }
}

pub struct Walk2dCheck;

impl Experiment for Walk2dCheck {
    fn name(&self) -> &'static str {
        "walk2d-check"
    }

    fn about(&self) -> &'static str {
        "Spectrum of the magnetic two-dimensional walk on an L×L torus"
    }

    fn run(&self, params: &Resolved) -> Result<Outcome, CliError> {
        let pair = params.pair(CRITICAL)?;
        let flux: Frequency = params.freq("1/5")?;
        let l = params.int("l", params.params.l, 20, (2, 40))?;
        let out = params.out("walk2d.csv");
        let walk = walk2d_build(&pair, &flux, l as usize)?;
        let angles = walk2d_spectrum(&walk)?;
        Ok(Outcome {
            out,
            summary: vec![
                ("eigenvalues", json!(angles.len())),
                ("unitarity_residual", json!(walk.unitarity_residual())),
            ],
            payload: Payload::Csv(spectrum_table(&angles)),
            failure: None,
        })
    }
}

//! The experiments reachable from the command line, one registry entry per
//! subcommand.

mod cocycle;
mod spectral;
mod structure;

use std::path::PathBuf;

use serde_json::Value;
use uamo_core::io::CsvTable;
use uamo_core::{CouplingPair, Frequency};
use uamo_spectrum::{band_set, BandSet};

use crate::error::CliError;
use crate::params::Resolved;

/// Primary output of a command.
pub enum Payload {
    Csv(CsvTable),
    Json(String),
}

impl Payload {
    pub fn render(&self) -> String {
        match self {
            Payload::Csv(t) => t.render(),
            Payload::Json(s) => format!("{s}\n"),
        }
    }
}

/// Result of a completed run: the primary file and a short summary that is
/// printed and echoed into the manifest. A run whose verification did not
/// hold still writes its outputs and then reports `failure`.
pub struct Outcome {
    pub out: PathBuf,
    pub payload: Payload,
    pub summary: Vec<(&'static str, Value)>,
    pub failure: Option<String>,
}

pub trait Experiment: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, params: &Resolved) -> Result<Outcome, CliError>;
}

static REGISTRY: [&dyn Experiment; 9] = [
    &spectral::Butterfly,
    &structure::Dynamics,
    &cocycle::Lyapunov,
    &cocycle::Acceleration,
    &structure::Duality,
    &structure::CmvCheck,
    &cocycle::CocycleVerify,
    &spectral::MeasureTrend,
    &spectral::Walk2dCheck,
];

pub fn experiments() -> &'static [&'static dyn Experiment] {
    &REGISTRY
}

pub fn experiment(name: &str) -> Option<&'static dyn Experiment> {
    REGISTRY.iter().copied().find(|e| e.name() == name)
}

/// Largest denominator used when a rational stand-in for `Φ` is needed.
const APPROX_Q_MAX: u64 = 55;

/// `Φ` itself when rational with period at most `q_max`, otherwise its last
/// convergent with denominator at most `q_max`.
fn rational_stand_in(freq: &Frequency, q_max: u64) -> Result<Frequency, CliError> {
    if freq.period().is_some_and(|q| q <= q_max) {
        return Ok(*freq);
    }
    let (p, q) = freq
        .convergents(64)
        .into_iter()
        .take_while(|&(_, q)| q <= q_max)
        .last()
        .ok_or_else(|| CliError::Usage("Φ has no convergent with a small denominator".into()))?;
    Ok(Frequency::rational(p, q)?)
}

/// Band centers of the rational stand-in for `Φ`, `count` of them spread
/// evenly over the arcs.
fn spectrum_points(
    params: &Resolved,
    pair: &CouplingPair,
    freq: &Frequency,
    theta: f64,
    count: u64,
) -> Result<Vec<f64>, CliError> {
    let approx = rational_stand_in(freq, APPROX_Q_MAX)?;
    let q = approx.period().expect("stand-in is rational") as usize;
    params.record("z_source", format!("band centers at Φ = {approx}"));
    let set: BandSet = band_set(pair, &approx, theta, 8 * q)?;
    let centers = set.centers();
    if centers.is_empty() {
        return Err(CliError::Numerical("empty band set".into()));
    }
    let k = (count as usize).min(centers.len());
    Ok((0..k).map(|i| centers[i * centers.len() / k]).collect())
}

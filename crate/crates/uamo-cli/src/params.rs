use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use uamo_core::{CouplingPair, Frequency};

use crate::error::CliError;

/// Flags shared by every command. A TOML config file may set the same keys
/// (`lambda1 = 0.5`, `eps-min = -0.3`); flags take precedence.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Params {
    /// Shift coupling λ₁ ∈ [0, 1].
    #[arg(long)]
    pub lambda1: Option<f64>,
    /// Coin coupling λ₂ ∈ [0, 1].
    #[arg(long)]
    pub lambda2: Option<f64>,
    /// Frequency Φ as `p/q`, a decimal in [0, 1) or `golden`.
    #[arg(long)]
    pub phi: Option<String>,
    /// Phase θ.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Largest denominator (butterfly, measure trend).
    #[arg(long)]
    pub qmax: Option<u64>,
    /// Number of walk steps.
    #[arg(long)]
    pub steps: Option<u64>,
    /// Cocycle iterations per Lyapunov estimate.
    #[arg(long)]
    pub n: Option<u64>,
    /// Spectral parameter: `auto-spectrum` or comma-separated angles in radians.
    #[arg(long)]
    pub z: Option<String>,
    /// Number of band centers used by `--z auto-spectrum`.
    #[arg(long)]
    pub z_count: Option<u64>,
    /// Cocycle variant (A, B, A_sharp, A_realified).
    #[arg(long)]
    pub variant: Option<String>,
    /// Imaginary phase shift ε.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Lower end of the ε grid (acceleration)
    #[arg(long, allow_hyphen_values = true)]
    pub eps_min: Option<f64>,
    /// Upper end of the ε grid (acceleration)
    #[arg(long, allow_hyphen_values = true)]
    pub eps_max: Option<f64>,
    /// Number of ε grid points (acceleration)
    #[arg(long)]
    pub eps_count: Option<u64>,
    /// Number of phases in the union over θ (1 means the fixed phase `--theta`).
    #[arg(long)]
    pub phases: Option<u64>,
    /// Quasi-momentum samples per unit of the period.
    #[arg(long)]
    pub k_per_q: Option<u64>,
    /// Tail mass discarded when truncating eigenvectors.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Number of dual phases ξ on a uniform grid (duality)
    #[arg(long)]
    pub xi_count: Option<u64>,
    /// Half-width of a site window.
    #[arg(long)]
    pub half_width: Option<u64>,
    /// Torus side length.
    #[arg(long)]
    pub l: Option<u64>,
    /// Number of random samples.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Random seed (cocycle-verify)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Primary output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (falls back to UAMO_THREADS).
    #[arg(long, env = "UAMO_THREADS")]
    pub threads: Option<usize>,
    /// TOML config file with the same keys as the flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Params {
    /// Overlays these flags on the values of the config file, if any.
    pub fn with_config(self) -> Result<Self, CliError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let file: Params = toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {}", path.display(), e.message())))?;
        let mut merged = serde_json::to_value(file).expect("params serialize");
        let flags = serde_json::to_value(&self).expect("params serialize");
        if let (Value::Object(base), Value::Object(top)) = (&mut merged, flags) {
            for (k, v) in top {
                if !v.is_null() {
                    base.insert(k, v);
                }
            }
        }
        let mut out: Params = serde_json::from_value(merged).expect("merged params deserialize");
        out.config = self.config;
        Ok(out)
    }
}

/// Parameter access with defaults and range checks. Every value handed to a
/// command is recorded for the manifest.
pub struct Resolved {
    pub params: Params,
    echo: RefCell<BTreeMap<String, Value>>,
}

impl Resolved {
    pub fn new(params: Params) -> Self {
        Self { params, echo: RefCell::new(BTreeMap::new()) }
    }

    pub fn record(&self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("echo value serializes");
        self.echo.borrow_mut().insert(key.to_string(), v);
    }

    pub fn echo(&self) -> BTreeMap<String, Value> {
        self.echo.borrow().clone()
    }

    pub fn pair(&self, default: (f64, f64)) -> Result<CouplingPair, CliError> {
        let l1 = self.params.lambda1.unwrap_or(default.0);
        let l2 = self.params.lambda2.unwrap_or(default.1);
        self.record("lambda1", l1);
        self.record("lambda2", l2);
        Ok(CouplingPair::new(l1, l2)?)
    }

    pub fn freq(&self, default: &str) -> Result<Frequency, CliError> {
        let text = self.params.phi.clone().unwrap_or_else(|| default.to_string());
        let freq: Frequency = text.parse()?;
        self.record("phi", freq.to_string());
        Ok(freq)
    }

    pub fn real(&self, key: &str, value: Option<f64>, default: f64, range: (f64, f64)) -> Result<f64, CliError> {
        let v = value.unwrap_or(default);
        if !(v.is_finite() && v >= range.0 && v <= range.1) {
            return Err(CliError::Usage(format!("--{key} must lie in [{}, {}], got {v}", range.0, range.1)));
        }
        self.record(key, v);
        Ok(v)
    }

    pub fn int(&self, key: &str, value: Option<u64>, default: u64, range: (u64, u64)) -> Result<u64, CliError> {
        let v = value.unwrap_or(default);
        if v < range.0 || v > range.1 {
            return Err(CliError::Usage(format!("--{key} must lie in [{}, {}], got {v}", range.0, range.1)));
        }
        self.record(key, v);
        Ok(v)
    }

    pub fn theta(&self) -> Result<f64, CliError> {
        self.real("theta", self.params.theta, 0.0, (-1e6, 1e6))
    }

    pub fn text(&self, key: &str, value: Option<&String>, default: &str) -> String {
        let v = value.cloned().unwrap_or_else(|| default.to_string());
        self.record(key, &v);
        v
    }

    pub fn out(&self, default: &str) -> PathBuf {
        let p = self.params.out.clone().unwrap_or_else(|| PathBuf::from(default));
        self.record("out", p.display().to_string());
        p
    }
}

/// `dir/stem.manifest.json` next to the primary output `dir/stem.ext`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "uamo".into());
    out.with_file_name(format!("{stem}.manifest.json"))
}

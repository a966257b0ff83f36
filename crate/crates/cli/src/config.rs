use std::fs;
use std::path::Path;

use pulsegate_core::{
    geometric_schmidt_weights, DispersionParams, FrequencyGrid, GateConfig, GaussianMoments,
    OracleScenario, PhaseMatching, SchmidtSpectrum, C64,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Scenario files shipped with the binary; `--config` overrides them.
pub const PRESETS: &[(&str, &str)] = &[
    ("fig1", include_str!("../presets/fig1.json")),
    ("fig2", include_str!("../presets/fig2.json")),
    ("fig3", include_str!("../presets/fig3.json")),
    ("fig4", include_str!("../presets/fig4.json")),
    ("twin_swap", include_str!("../presets/twin_swap.json")),
    ("select", include_str!("../presets/select.json")),
    ("jsa", include_str!("../presets/jsa.json")),
    ("oracle", include_str!("../presets/oracle.json")),
];

fn preset(name: &str) -> &'static str {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .expect("preset names are fixed at compile time")
}

/// A parsed scenario plus the exact bytes it came from (hashed into the
/// output manifest so artifacts stay traceable to their input).
pub struct LoadedConfig {
    pub config: ScenarioConfig,
    pub bytes: Vec<u8>,
    pub source: String,
}

pub fn load(path: Option<&Path>, preset_name: &str) -> Result<LoadedConfig> {
    let (bytes, source) = match path {
        Some(p) => {
            let bytes = fs::read(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            (bytes, p.display().to_string())
        }
        None => (
            preset(preset_name).as_bytes().to_vec(),
            format!("preset:{preset_name}"),
        ),
    };
    let config: ScenarioConfig =
        serde_json::from_slice(&bytes).map_err(|e| CliError::Config(format!("{source}: {e}")))?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "{source}: schema_version {} unsupported, this build reads version {SCHEMA_VERSION}",
            config.schema_version
        )));
    }
    Ok(LoadedConfig {
        config,
        bytes,
        source,
    })
}

/// One scenario file. Sections are optional; each subcommand demands the
/// ones it actually uses. Unknown keys are rejected so typos fail loudly.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub seed: Option<SeedSection>,
    #[serde(default)]
    pub gate: Option<GateSection>,
    #[serde(default)]
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub jsa: Option<JsaSection>,
    #[serde(default)]
    pub oracle: Option<OracleSection>,
    #[serde(default)]
    pub select: Option<SelectSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSection {
    pub kind: SeedKind,
    /// Collective gain G; per-mode gains are G·√weight.
    pub gain: f64,
    pub weights: WeightSpec,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "one")]
    pub width: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedKind {
    /// Independently squeezed Schmidt modes.
    Single,
    /// Signal/idler twin pairs, one per Schmidt order.
    Twin,
}

/// Schmidt weights, either an explicit list or a geometric family.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    #[serde(default)]
    pub geometric: Option<GeometricWeights>,
    #[serde(default)]
    pub list: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricWeights {
    pub ratio: f64,
    pub count: usize,
}

impl WeightSpec {
    pub fn resolve(&self) -> Result<Vec<f64>> {
        match (&self.geometric, &self.list) {
            (Some(g), None) => Ok(geometric_schmidt_weights(g.ratio, g.count)?),
            (None, Some(list)) => Ok(list.clone()),
            _ => Err(CliError::Config(
                "weights need exactly one of `geometric` or `list`".into(),
            )),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSection {
    /// Gate angle in radians.
    pub theta: f64,
    pub matched_orders: Vec<usize>,
    pub mu: Vec<MuSpec>,
}

/// One projection weight as magnitude and phase (radians).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuSpec {
    pub abs: f64,
    #[serde(default)]
    pub phase: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default = "default_half_width")]
    pub half_width: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            half_width: default_half_width(),
            points: default_points(),
        }
    }
}

/// Uniform sweep axis (radians for angle and phase sweeps), endpoint included.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSection {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points < 2 {
            return Err(CliError::Config(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.stop <= self.start {
            return Err(CliError::Config(format!(
                "sweep range [{}, {}] is not an increasing finite interval",
                self.start, self.stop
            )));
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| self.start + step * i as f64)
            .collect())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsaSection {
    pub pump_width: f64,
    pub group_delay_mismatch: f64,
    pub phase_matching: PmSpec,
    /// Override for the sinc-lobe Gaussian fit coefficient.
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default = "default_max_modes")]
    pub max_modes: usize,
    /// Extra σ/Δω points for the mode-number sweep (pump width held fixed).
    #[serde(default)]
    pub ratios: Vec<f64>,
}

impl JsaSection {
    pub fn dispersion(&self) -> Result<DispersionParams> {
        Ok(match self.alpha {
            Some(a) => DispersionParams::with_alpha(self.pump_width, self.group_delay_mismatch, a)?,
            None => DispersionParams::new(self.pump_width, self.group_delay_mismatch)?,
        })
    }

    /// Dispersion parameters hitting a requested σ/Δω at this pump width.
    pub fn dispersion_at_ratio(&self, ratio: f64) -> Result<DispersionParams> {
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(CliError::Config(format!(
                "factorization ratio must be positive, got {ratio}"
            )));
        }
        let alpha = self.alpha.unwrap_or(pulsegate_core::tol::SINC_GAUSS_ALPHA);
        // ratio = σ/Δω with Δω = sqrt(2/α)/τ, so τ = ratio·sqrt(2/α)/σ.
        let tau = ratio * (2.0 / alpha).sqrt() / self.pump_width;
        Ok(match self.alpha {
            Some(a) => DispersionParams::with_alpha(self.pump_width, tau, a)?,
            None => DispersionParams::new(self.pump_width, tau)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PmSpec {
    Sinc,
    Gaussian,
}

impl From<PmSpec> for PhaseMatching {
    fn from(pm: PmSpec) -> Self {
        match pm {
            PmSpec::Sinc => PhaseMatching::Sinc,
            PmSpec::Gaussian => PhaseMatching::Gaussian,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub scenarios: Vec<OracleScenario>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectSection {
    /// Schmidt order the cascade isolates.
    pub order: usize,
}

fn one() -> f64 {
    1.0
}

fn default_half_width() -> f64 {
    8.0
}

fn default_points() -> usize {
    2049
}

fn default_max_modes() -> usize {
    8
}

impl ScenarioConfig {
    pub fn seed(&self) -> Result<&SeedSection> {
        self.seed
            .as_ref()
            .ok_or_else(|| CliError::Config("missing `seed` section".into()))
    }

    pub fn gate(&self) -> Result<&GateSection> {
        self.gate
            .as_ref()
            .ok_or_else(|| CliError::Config("missing `gate` section".into()))
    }

    pub fn sweep(&self) -> Result<&SweepSection> {
        self.sweep
            .as_ref()
            .ok_or_else(|| CliError::Config("missing `sweep` section".into()))
    }

    pub fn jsa(&self) -> Result<&JsaSection> {
        self.jsa
            .as_ref()
            .ok_or_else(|| CliError::Config("missing `jsa` section".into()))
    }

    pub fn select(&self) -> Result<&SelectSection> {
        self.select
            .as_ref()
            .ok_or_else(|| CliError::Config("missing `select` section".into()))
    }

    pub fn oracle(&self) -> Result<&OracleSection> {
        self.oracle
            .as_ref()
            .ok_or_else(|| CliError::Config("missing `oracle` section".into()))
    }

    pub fn spectrum(&self) -> Result<SchmidtSpectrum> {
        let seed = self.seed()?;
        let weights = seed.weights.resolve()?;
        Ok(SchmidtSpectrum::new(
            seed.gain,
            weights,
            seed.center,
            seed.width,
        )?)
    }

    /// Seed state with the SF channel prepended at index 0.
    pub fn input_state(&self) -> Result<GaussianMoments> {
        let seed = self.seed()?;
        let spectrum = self.spectrum()?;
        Ok(match seed.kind {
            SeedKind::Single => GaussianMoments::squeezed_vacuum(&spectrum, true),
            SeedKind::Twin => GaussianMoments::twin_beam(&spectrum).with_sf_channel(),
        })
    }

    pub fn gate_config(&self) -> Result<GateConfig> {
        let gate = self.gate()?;
        let mu: Vec<C64> = gate
            .mu
            .iter()
            .map(|m| C64::from_polar(m.abs, m.phase))
            .collect();
        Ok(GateConfig::new(
            gate.theta,
            mu,
            gate.matched_orders.clone(),
        )?)
    }

    pub fn frequency_grid(&self) -> Result<FrequencyGrid> {
        let section = self.grid.clone().unwrap_or_default();
        Ok(FrequencyGrid::symmetric(
            section.half_width,
            section.points,
        )?)
    }
}

//! JSON run configurations for each subcommand.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sta_perceptron::faquad::{synthesize_faquad, FaquadConfig};
use sta_perceptron::ie::{synthesize, SynthesisConfig};
use sta_perceptron::network::LayerSpec;
use sta_perceptron::optimize::{step_grid, CoefficientGrid, InnerSearch, Method};
use sta_perceptron::Pulse;

use crate::error::{CliError, CliResult};

/// Either an explicit list of values or an evenly stepped range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    List(Vec<f64>),
    Range { lo: f64, hi: f64, step: f64 },
}

impl GridSpec {
    pub fn range(lo: f64, hi: f64, step: f64) -> Self {
        GridSpec::Range { lo, hi, step }
    }

    pub fn values(&self) -> CliResult<Vec<f64>> {
        let v = match self {
            GridSpec::List(v) => v.clone(),
            GridSpec::Range { lo, hi, step } => step_grid(*lo, *hi, *step)?,
        };
        if v.is_empty() {
            return Err(CliError::Config("grid is empty".into()));
        }
        Ok(v)
    }
}

/// Where a command gets its pulse: exactly one field must be set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulse_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faquad: Option<FaquadConfig>,
}

impl PulseSource {
    pub fn synthesis(cfg: SynthesisConfig) -> Self {
        Self { synthesis: Some(cfg), ..Self::default() }
    }

    pub fn faquad(cfg: FaquadConfig) -> Self {
        Self { faquad: Some(cfg), ..Self::default() }
    }

    pub fn load(&self) -> CliResult<Pulse> {
        match (&self.pulse_csv, &self.synthesis, &self.faquad) {
            (Some(path), None, None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                Ok(Pulse::from_csv(&text)?)
            }
            (None, Some(cfg), None) => Ok(synthesize(cfg)?.pulse),
            (None, None, Some(cfg)) => Ok(synthesize_faquad(cfg)?),
            _ => Err(CliError::Config("pulse: set exactly one of pulse_csv, synthesis, faquad".into())),
        }
    }
}

fn default_x_max() -> f64 {
    12.0
}

fn default_transfer_grid() -> GridSpec {
    GridSpec::range(-12.0, 12.0, 0.1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferConfig {
    pub pulse: PulseSource,
    /// Scaled potentials `x/Ω_f` to evaluate.
    #[serde(default = "default_transfer_grid")]
    pub grid: GridSpec,
    /// Range used for the distance `C`, in units of `Ω_f`.
    #[serde(default = "default_x_max")]
    pub x_max: f64,
    /// Also write the pulse samples.
    #[serde(default)]
    pub write_pulse: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// `C` versus `t_f`.
    #[serde(rename = "t_f")]
    Tf,
    /// `C` versus `Ω_f` at fixed `y/Ω_f`.
    OmegaF,
    /// `C` versus `y/Ω_f`.
    Y,
    /// Smallest `t_f` on the grid reaching `tolerance`.
    TimeOptimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub kind: SweepKind,
    #[serde(default)]
    pub template: SynthesisConfig,
    pub grid: GridSpec,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub search: InnerSearch,
    /// Inner grid for scanned methods; defaults per degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientGrid>,
    /// Required for `time_optimal`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    /// Must have degree 4 or 5; its free coefficients are ignored.
    pub template: SynthesisConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a3: Option<GridSpec>,
}

impl ScanConfig {
    pub fn grid(&self) -> CliResult<CoefficientGrid> {
        let default = CoefficientGrid::default_for(self.template.degree)
            .ok_or_else(|| CliError::Config(format!("scan needs degree 4 or 5, got {}", self.template.degree)))?;
        let a2 = match &self.a2 {
            Some(g) => g.values()?,
            None => default.a2,
        };
        let a3 = match (&self.a3, self.template.degree) {
            (Some(g), 5) => g.values()?,
            (None, 5) => default.a3,
            (Some(_), _) => return Err(CliError::Config("a3 grid given for a degree-4 scan".into())),
            (None, _) => Vec::new(),
        };
        Ok(CoefficientGrid { a2, a3 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prepare {
    /// Perceptron qubit starts in `|0⟩` and a Hadamard brings it to `|+⟩`.
    #[default]
    Hadamard,
    /// Perceptron qubit starts in the pulse's own initial state.
    Protocol,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub layer: LayerSpec,
    pub pulse: PulseSource,
    /// Input-register amplitudes `[re, im]`, length `2^n_prev`; defaults to
    /// the uniform superposition. Ignored when `state_csv` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<[f64; 2]>>,
    /// Full register to apply the gate to, bypassing preparation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_csv: Option<PathBuf>,
    #[serde(default)]
    pub prepare: Prepare,
    #[serde(default = "yes")]
    pub phase_correction: bool,
    #[serde(default = "default_x_max")]
    pub x_max: f64,
}

fn yes() -> bool {
    true
}

impl NetworkConfig {
    pub fn input_amplitudes(&self) -> Vec<Complex64> {
        match &self.inputs {
            Some(v) => v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
            None => {
                let n = 1usize << self.layer.n_prev();
                vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n]
            }
        }
    }
}

pub fn parse<T: serde::de::DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
}

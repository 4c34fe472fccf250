//! Run configuration: a JSON document plus command-line overrides.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use spinfringe::{
    Factor, FringeSettings, PhaseConvention, PhaseModel, PhaseSource, SlitGeometry, SternGerlachStage,
    TransmittedChoice,
};

use crate::error::CliError;

/// Environment variable that redirects relative output paths.
pub const OUTPUT_DIR_ENV: &str = "SPINFRINGE_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgStageConfig {
    pub factor: u8,
    #[serde(default)]
    pub axis_angle: f64,
}

/// The configuration document as written by the user. Every field is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawConfig {
    pub wavelength: f64,
    pub slit_positions: Option<Vec<f64>>,
    pub slit_count: usize,
    pub separation: f64,
    pub screen_distance: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub samples: usize,
    pub phase_convention: PhaseConvention,
    pub phase_source: PhaseSource,
    pub transmitted: TransmittedChoice,
    pub detection: Vec<usize>,
    pub sg_stage: Option<SgStageConfig>,
    pub i0: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for RawConfig {
    fn default() -> Self {
        Self {
            wavelength: 500e-9,
            slit_positions: None,
            slit_count: 2,
            separation: 2e-6,
            screen_distance: 1.0,
            theta_min: -0.3,
            theta_max: 0.3,
            samples: 1001,
            phase_convention: PhaseConvention::Half,
            phase_source: PhaseSource::Optical,
            transmitted: TransmittedChoice::U,
            detection: Vec::new(),
            sg_stage: None,
            i0: 1.0,
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(alias = "paper")]
    Full,
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Optical,
    Subtended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransmittedArg {
    U,
    V,
}

/// Flags that override values from the configuration file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Wavelength in meters.
    #[arg(long)]
    pub wavelength: Option<f64>,
    /// Comma-separated slit positions in meters; replaces count/separation.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub slit_positions: Option<Vec<f64>>,
    /// Number of equally spaced slits.
    #[arg(long)]
    pub slit_count: Option<usize>,
    /// Slit spacing in meters.
    #[arg(long)]
    pub separation: Option<f64>,
    /// Aperture-to-screen distance in meters.
    #[arg(long)]
    pub screen_distance: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long, value_enum)]
    pub phase_source: Option<SourceArg>,
    #[arg(long, value_enum)]
    pub transmitted: Option<TransmittedArg>,
    /// Comma-separated 1-based slit indices carrying a which-way detector.
    #[arg(long, value_delimiter = ',', conflicts_with = "no_detection")]
    pub detect: Option<Vec<usize>>,
    /// Clear any detectors set in the configuration file.
    #[arg(long)]
    pub no_detection: bool,
    /// Tensor factor (1 or 2) measured by a Stern-Gerlach stage.
    #[arg(long)]
    pub sg_factor: Option<u8>,
    /// Measurement axis angle of the Stern-Gerlach stage, radians.
    #[arg(long, allow_hyphen_values = true)]
    pub sg_axis: Option<f64>,
    /// Intensity scale I0.
    #[arg(long)]
    pub i0: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl RawConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config("config", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.wavelength {
            self.wavelength = v;
        }
        if let Some(v) = &o.slit_positions {
            self.slit_positions = Some(v.clone());
        }
        if o.slit_count.is_some() || o.separation.is_some() {
            self.slit_positions = None;
        }
        if let Some(v) = o.slit_count {
            self.slit_count = v;
        }
        if let Some(v) = o.separation {
            self.separation = v;
        }
        if let Some(v) = o.screen_distance {
            self.screen_distance = v;
        }
        if let Some(v) = o.theta_min {
            self.theta_min = v;
        }
        if let Some(v) = o.theta_max {
            self.theta_max = v;
        }
        if let Some(v) = o.samples {
            self.samples = v;
        }
        if let Some(v) = o.convention {
            self.phase_convention = match v {
                ConventionArg::Full => PhaseConvention::Full,
                ConventionArg::Half => PhaseConvention::Half,
            };
        }
        if let Some(v) = o.phase_source {
            self.phase_source = match v {
                SourceArg::Optical => PhaseSource::Optical,
                SourceArg::Subtended => PhaseSource::Subtended,
            };
        }
        if let Some(v) = o.transmitted {
            self.transmitted = match v {
                TransmittedArg::U => TransmittedChoice::U,
                TransmittedArg::V => TransmittedChoice::V,
            };
        }
        if let Some(v) = &o.detect {
            self.detection = v.clone();
        }
        if o.no_detection {
            self.detection.clear();
        }
        if o.sg_factor.is_some() || o.sg_axis.is_some() {
            let current = self.sg_stage.unwrap_or(SgStageConfig { factor: 1, axis_angle: 0.0 });
            self.sg_stage = Some(SgStageConfig {
                factor: o.sg_factor.unwrap_or(current.factor),
                axis_angle: o.sg_axis.unwrap_or(current.axis_angle),
            });
        }
        if let Some(v) = o.i0 {
            self.i0 = v;
        }
        if let Some(v) = o.format {
            self.output_format = v;
        }
        if let Some(v) = &o.output {
            self.output_path = Some(v.clone());
        }
    }

    /// Checks every field and builds the typed configuration.
    pub fn validate(&self) -> Result<SimulationConfig, CliError> {
        fn positive(field: &'static str, v: f64) -> Result<(), CliError> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::config(field, format!("must be a positive number, got {v}")))
            }
        }

        positive("wavelength", self.wavelength)?;
        positive("screen_distance", self.screen_distance)?;
        positive("i0", self.i0)?;

        let positions = match &self.slit_positions {
            Some(p) => {
                if p.len() < 2 {
                    return Err(CliError::config("slit_positions", "need at least 2 slits"));
                }
                if p.iter().any(|a| !a.is_finite()) || p.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(CliError::config("slit_positions", "must be finite and strictly increasing"));
                }
                p.clone()
            }
            None => {
                if self.slit_count < 2 {
                    return Err(CliError::config(
                        "slit_count",
                        format!("need at least 2 slits, got {}", self.slit_count),
                    ));
                }
                positive("separation", self.separation)?;
                let center = (self.slit_count as f64 - 1.0) / 2.0;
                (0..self.slit_count).map(|k| (k as f64 - center) * self.separation).collect()
            }
        };
        let slit_field = if self.slit_positions.is_some() { "slit_positions" } else { "separation" };
        let geometry = SlitGeometry::new(positions, self.wavelength, self.screen_distance)
            .map_err(|e| CliError::config(slit_field, e.to_string()))?;

        for (field, v) in [("theta_min", self.theta_min), ("theta_max", self.theta_max)] {
            if !(v.is_finite() && v.abs() < FRAC_PI_2) {
                return Err(CliError::config(field, format!("must lie in (-π/2, π/2), got {v}")));
            }
        }
        if self.samples < 2 {
            return Err(CliError::config("samples", format!("need at least 2 samples, got {}", self.samples)));
        }
        if self.theta_min.partial_cmp(&self.theta_max) != Some(std::cmp::Ordering::Less) {
            return Err(CliError::config("theta_max", "must be greater than theta_min"));
        }

        let n = geometry.slit_count();
        let mut seen = Vec::new();
        for &i in &self.detection {
            if i == 0 || i > n {
                return Err(CliError::config("detection", format!("slit index {i} outside 1..={n}")));
            }
            if seen.contains(&i) {
                return Err(CliError::config("detection", format!("slit index {i} listed twice")));
            }
            seen.push(i);
        }

        let stern_gerlach = match self.sg_stage {
            None => None,
            Some(sg) => {
                let factor = Factor::try_from(sg.factor).map_err(|e| CliError::config("sg_stage", e.to_string()))?;
                if !sg.axis_angle.is_finite() {
                    return Err(CliError::config("sg_stage", "axis_angle must be finite"));
                }
                if n != 2 {
                    return Err(CliError::config("sg_stage", "only supported for two slits"));
                }
                Some(SternGerlachStage { factor, axis_angle: sg.axis_angle })
            }
        };

        Ok(SimulationConfig {
            geometry,
            theta_min: self.theta_min,
            theta_max: self.theta_max,
            samples: self.samples,
            settings: FringeSettings {
                phase: PhaseModel::new(self.phase_convention, self.phase_source),
                transmitted: self.transmitted,
                i0: self.i0,
                stern_gerlach,
            },
            detection: self.detection.clone(),
            output_format: self.output_format,
            output_path: self.output_path.clone(),
        })
    }
}

/// A validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub geometry: SlitGeometry,
    pub theta_min: f64,
    pub theta_max: f64,
    pub samples: usize,
    pub settings: FringeSettings,
    pub detection: Vec<usize>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl SimulationConfig {
    pub fn thetas(&self) -> Vec<f64> {
        spinfringe::theta_grid(self.theta_min, self.theta_max, self.samples)
    }

    /// Output path after applying the output-directory override to relative paths.
    pub fn resolved_output(&self, output_dir: Option<&Path>) -> Option<PathBuf> {
        let path = self.output_path.as_ref()?;
        match output_dir {
            Some(dir) if path.is_relative() => Some(dir.join(path)),
            _ => Some(path.clone()),
        }
    }
}

/// Reads `path` when given, applies overrides, and validates.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<SimulationConfig, CliError> {
    let mut raw = match path {
        Some(p) => RawConfig::load(p)?,
        None => RawConfig::default(),
    };
    raw.apply(overrides);
    raw.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(raw: RawConfig) -> &'static str {
        match raw.validate() {
            Err(CliError::Config { field, .. }) => field,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_validate() {
        let cfg = RawConfig::default().validate().unwrap();
        assert_eq!(cfg.geometry.slit_positions(), &[-1e-6, 1e-6]);
        assert_eq!(cfg.samples, 1001);
        assert_eq!(cfg.settings.phase.convention, PhaseConvention::Half);
        assert_eq!(cfg.thetas().len(), 1001);
    }

    #[test]
    fn each_violation_names_its_field() {
        let base = RawConfig::default;
        assert_eq!(field_of(RawConfig { wavelength: 0.0, ..base() }), "wavelength");
        assert_eq!(field_of(RawConfig { screen_distance: -1.0, ..base() }), "screen_distance");
        assert_eq!(field_of(RawConfig { i0: f64::NAN, ..base() }), "i0");
        assert_eq!(field_of(RawConfig { slit_count: 1, ..base() }), "slit_count");
        assert_eq!(field_of(RawConfig { separation: 0.0, ..base() }), "separation");
        assert_eq!(field_of(RawConfig { slit_positions: Some(vec![1.0, 0.0]), ..base() }), "slit_positions");
        assert_eq!(field_of(RawConfig { slit_positions: Some(vec![0.0]), ..base() }), "slit_positions");
        assert_eq!(field_of(RawConfig { theta_min: -1.6, ..base() }), "theta_min");
        assert_eq!(field_of(RawConfig { theta_max: 2.0, ..base() }), "theta_max");
        assert_eq!(field_of(RawConfig { theta_min: 0.3, theta_max: 0.3, ..base() }), "theta_max");
        assert_eq!(field_of(RawConfig { samples: 1, ..base() }), "samples");
        assert_eq!(field_of(RawConfig { detection: vec![3], ..base() }), "detection");
        assert_eq!(field_of(RawConfig { detection: vec![1, 1], ..base() }), "detection");
        let sg = Some(SgStageConfig { factor: 3, axis_angle: 0.0 });
        assert_eq!(field_of(RawConfig { sg_stage: sg, ..base() }), "sg_stage");
        let sg = Some(SgStageConfig { factor: 1, axis_angle: 0.0 });
        assert_eq!(field_of(RawConfig { sg_stage: sg, slit_count: 3, ..base() }), "sg_stage");
    }

    #[test]
    fn json_document_and_overrides() {
        let mut raw = RawConfig::from_json(
            r#"{"wavelength": 6e-7, "slit_positions": [0.0, 1e-6, 3e-6],
                "phase_convention": "full", "transmitted": "v", "detection": [2],
                "output_format": "json", "sg_stage": null}"#,
        )
        .unwrap();
        assert_eq!(raw.wavelength, 6e-7);
        assert_eq!(raw.phase_convention, PhaseConvention::Full);
        let legacy = RawConfig::from_json(r#"{"phase_convention": "paper"}"#).unwrap();
        assert_eq!(legacy.phase_convention, PhaseConvention::Full);
        assert_eq!(raw.transmitted, TransmittedChoice::V);

        let o = Overrides {
            wavelength: Some(4e-7),
            slit_count: Some(4),
            no_detection: true,
            convention: Some(ConventionArg::Half),
            format: Some(OutputFormat::Csv),
            ..Overrides::default()
        };
        raw.apply(&o);
        let cfg = raw.validate().unwrap();
        assert_eq!(cfg.geometry.wavelength(), 4e-7);
        assert_eq!(cfg.geometry.slit_count(), 4);
        assert!(cfg.detection.is_empty());
        assert_eq!(cfg.settings.phase.convention, PhaseConvention::Half);
        assert_eq!(cfg.output_format, OutputFormat::Csv);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(RawConfig::from_json(r#"{"wavelenght": 5e-7}"#).is_err());
        assert!(RawConfig::from_json(r#"{"phase_convention": "quarter"}"#).is_err());
    }

    #[test]
    fn output_dir_applies_to_relative_paths_only() {
        let mut cfg = RawConfig::default().validate().unwrap();
        assert_eq!(cfg.resolved_output(Some(Path::new("/tmp/x"))), None);
        cfg.output_path = Some(PathBuf::from("a.csv"));
        assert_eq!(cfg.resolved_output(Some(Path::new("/tmp/x"))), Some(PathBuf::from("/tmp/x/a.csv")));
        cfg.output_path = Some(PathBuf::from("/abs/a.csv"));
        assert_eq!(cfg.resolved_output(Some(Path::new("/tmp/x"))), Some(PathBuf::from("/abs/a.csv")));
    }
}

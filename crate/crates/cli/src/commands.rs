use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use spinfringe::{
    classical_intensity, incidence_angles, independent_intensity, intensity_profile, pair_phase, FringeProfile,
    ScreenPoint, WavePhaseSet,
};

use crate::config::{OutputFormat, SimulationConfig};
use crate::error::CliError;
use crate::output::{num, profile_csv, to_json, write_atomic};

/// Where rendered output went.
#[derive(Debug, Clone, PartialEq)]
pub enum Emitted {
    File(std::path::PathBuf),
    Stdout(String),
}

fn emit(cfg: &SimulationConfig, output_dir: Option<&Path>, text: String) -> Result<Emitted, CliError> {
    match cfg.resolved_output(output_dir) {
        Some(path) => {
            write_atomic(&path, &text)?;
            Ok(Emitted::File(path))
        }
        None => Ok(Emitted::Stdout(text)),
    }
}

pub fn simulate(cfg: &SimulationConfig) -> Result<FringeProfile, CliError> {
    Ok(intensity_profile(&cfg.geometry, &cfg.thetas(), &cfg.settings, &cfg.detection)?)
}

pub fn render_profile(profile: &FringeProfile, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => profile_csv(profile),
        OutputFormat::Json => to_json(profile),
    }
}

pub fn run_simulate(cfg: &SimulationConfig, output_dir: Option<&Path>) -> Result<(FringeProfile, Emitted), CliError> {
    let profile = simulate(cfg)?;
    let emitted = emit(cfg, output_dir, render_profile(&profile, cfg.output_format))?;
    Ok((profile, emitted))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub theta: f64,
    pub intensity: f64,
    pub oracle: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub max_abs_diff: f64,
    pub i0: f64,
}

/// Model profile next to the classical wave prediction at each angle. With
/// detectors present the oracle is the independent-slit distribution.
pub fn compare(cfg: &SimulationConfig) -> Result<Comparison, CliError> {
    let profile = simulate(cfg)?;
    let positions = cfg.geometry.slit_positions();
    let i0 = cfg.settings.i0;
    let rows = profile
        .samples
        .iter()
        .map(|s| {
            let ws = WavePhaseSet::far_field(positions, cfg.geometry.wavelength(), s.theta)?;
            let rel = if cfg.detection.is_empty() { classical_intensity(&ws) } else { independent_intensity(&ws) };
            let oracle = i0 * rel;
            Ok(ComparisonRow { theta: s.theta, intensity: s.intensity, oracle, abs_diff: (s.intensity - oracle).abs() })
        })
        .collect::<Result<Vec<_>, spinfringe::Error>>()?;
    let max_abs_diff = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    Ok(Comparison { rows, max_abs_diff, i0 })
}

pub fn render_comparison(c: &Comparison, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("theta,intensity,oracle,abs_diff\n");
            for r in &c.rows {
                let _ = writeln!(out, "{},{},{},{}", num(r.theta), num(r.intensity), num(r.oracle), num(r.abs_diff));
            }
            out
        }
        OutputFormat::Json => to_json(c),
    }
}

pub fn run_compare(cfg: &SimulationConfig, output_dir: Option<&Path>) -> Result<(Comparison, Emitted), CliError> {
    let c = compare(cfg)?;
    let emitted = emit(cfg, output_dir, render_comparison(&c, cfg.output_format))?;
    Ok((c, emitted))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairPhase {
    pub i: usize,
    pub j: usize,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryRow {
    pub theta: f64,
    pub incidence: Vec<f64>,
    pub pair_phases: Vec<PairPhase>,
}

/// Per-angle incidence angles `α_i` and optical pair phases `φ_ij` (`i < j`).
pub fn geometry_table(cfg: &SimulationConfig) -> Result<Vec<GeometryRow>, CliError> {
    let g = &cfg.geometry;
    cfg.thetas()
        .into_iter()
        .map(|theta| {
            let p = ScreenPoint::new(theta)?;
            let pair_phases = g
                .pairs()
                .map(|(i, j)| Ok(PairPhase { i, j, phi: pair_phase(g, p, i, j)? }))
                .collect::<Result<Vec<_>, spinfringe::Error>>()?;
            Ok(GeometryRow { theta, incidence: incidence_angles(g, p), pair_phases })
        })
        .collect()
}

pub fn render_geometry(cfg: &SimulationConfig, rows: &[GeometryRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut header = vec!["theta".to_string()];
            header.extend((1..=cfg.geometry.slit_count()).map(|i| format!("alpha_{i}")));
            header.extend(cfg.geometry.pairs().map(|(i, j)| format!("phi_{i}_{j}")));
            let mut out = header.join(",");
            out.push('\n');
            for r in rows {
                let mut cells = vec![num(r.theta)];
                cells.extend(r.incidence.iter().map(|&a| num(a)));
                cells.extend(r.pair_phases.iter().map(|p| num(p.phi)));
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => to_json(&rows),
    }
}

pub fn run_geometry(
    cfg: &SimulationConfig,
    output_dir: Option<&Path>,
) -> Result<(Vec<GeometryRow>, Emitted), CliError> {
    let rows = geometry_table(cfg)?;
    let emitted = emit(cfg, output_dir, render_geometry(cfg, &rows, cfg.output_format))?;
    Ok((rows, emitted))
}

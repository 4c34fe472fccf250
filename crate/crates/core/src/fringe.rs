//! Screen-level predictions of the spin-coupling model.
//!
//! At a screen point each aperture pair `(i, j)` carries the pair state
//! `cos(φ) u - sin(φ) v`, where `φ` is the pair angle after the phase
//! convention is applied. Whichever of `u`, `v` is the transmitted state
//! registers on the screen with probability equal to its squared coordinate.
//! Which-way detection collapses `u` to an uncorrelated spinor and leaves
//! the independent (flat) distribution. A spin measurement on one factor
//! (a Stern-Gerlach stage) replaces the pair state by a two-outcome mixture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{pair_angle, PhaseSource, ScreenPoint, SlitGeometry};
use crate::qstate::{basis_u, basis_v, inner, Ensemble, EnsembleState, Spinor, TwoSpinState};
use crate::rotor::{rotation_matrix, RotationAngle};

/// Distance from `u` within which [`detect_at_slit`] accepts its input.
pub const COLLAPSE_TOL: f64 = 1e-10;

/// Measurement outcomes with smaller weight are dropped from the ensemble.
const WEIGHT_FLOOR: f64 = 1e-24;

/// How a pair angle maps to the rotation difference in the pair state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    /// Rotation difference equals the pair angle: intensity `cos²(φ)`,
    /// maxima at `d sin θ = mλ/2`.
    #[serde(alias = "paper")]
    Full,
    /// Rotation difference is half the pair angle: intensity `cos²(φ/2)`,
    /// maxima at `d sin θ = mλ`, the classical two-slit pattern.
    #[default]
    Half,
}

impl PhaseConvention {
    pub fn effective(self, phi: f64) -> f64 {
        match self {
            PhaseConvention::Full => phi,
            PhaseConvention::Half => 0.5 * phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhaseModel {
    pub convention: PhaseConvention,
    pub source: PhaseSource,
}

impl PhaseModel {
    pub fn new(convention: PhaseConvention, source: PhaseSource) -> Self {
        Self { convention, source }
    }
}

impl From<PhaseConvention> for PhaseModel {
    fn from(convention: PhaseConvention) -> Self {
        Self { convention, source: PhaseSource::Optical }
    }
}

/// Which member of `{u, v}` registers on the screen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TransmittedChoice {
    #[default]
    #[serde(rename = "u")]
    U,
    #[serde(rename = "v")]
    V,
}

impl TransmittedChoice {
    pub fn state(self) -> TwoSpinState {
        match self {
            TransmittedChoice::U => basis_u(),
            TransmittedChoice::V => basis_v(),
        }
    }

    pub fn other(self) -> Self {
        match self {
            TransmittedChoice::U => TransmittedChoice::V,
            TransmittedChoice::V => TransmittedChoice::U,
        }
    }
}

/// Tensor factor of a pair state, numbered 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Factor {
    First,
    Second,
}

impl TryFrom<u8> for Factor {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Factor::First),
            2 => Ok(Factor::Second),
            other => Err(Error::InvalidInput(format!("tensor factor must be 1 or 2, got {other}"))),
        }
    }
}

impl From<Factor> for u8 {
    fn from(f: Factor) -> u8 {
        match f {
            Factor::First => 1,
            Factor::Second => 2,
        }
    }
}

/// A spin measurement on one factor along the rotated axis `R(axis_angle)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SternGerlachStage {
    pub factor: Factor,
    pub axis_angle: f64,
}

/// The pair state `cos(φ) u - sin(φ) v` in `{u, v}` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairState {
    pub phi: f64,
    pub c_u: f64,
    pub c_v: f64,
}

impl PairState {
    pub fn from_phase(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self { phi, c_u: c, c_v: -s }
    }

    /// The correlation coefficient `ρ`; `u` registers with probability `ρ²`.
    pub fn rho(&self) -> f64 {
        self.c_u
    }

    pub fn to_two_spin(&self) -> TwoSpinState {
        self.c_u * basis_u() + self.c_v * basis_v()
    }
}

/// Pair state for slits `(i, j)` at `p`.
pub fn pair_state_at(g: &SlitGeometry, p: ScreenPoint, i: usize, j: usize, model: PhaseModel) -> Result<PairState> {
    let phi = pair_angle(g, p, i, j, model.source)?;
    Ok(PairState::from_phase(model.convention.effective(phi)))
}

pub fn two_slit_state_at(g: &SlitGeometry, p: ScreenPoint, model: impl Into<PhaseModel>) -> Result<PairState> {
    if g.slit_count() != 2 {
        return Err(Error::Geometry(format!("two-slit state needs exactly 2 slits, got {}", g.slit_count())));
    }
    pair_state_at(g, p, 1, 2, model.into())
}

pub fn transmission_probability(ps: &PairState, choice: TransmittedChoice) -> f64 {
    let c = match choice {
        TransmittedChoice::U => ps.c_u,
        TransmittedChoice::V => ps.c_v,
    };
    (c * c).clamp(0.0, 1.0)
}

/// Normalized intensity from pairwise correlations:
/// `(N + 2 Σ_{i<j} (ρ_ij² - (1 - ρ_ij²))) / N²`.
///
/// For the half convention with optical phases this is the grating sum
/// `|Σ e^{iφ_k}|² / N²`.
pub fn multi_slit_intensity(g: &SlitGeometry, p: ScreenPoint, model: impl Into<PhaseModel>) -> Result<f64> {
    let model = model.into();
    let n = g.slit_count() as f64;
    let mut acc = n;
    for (i, j) in g.pairs() {
        let ps = pair_state_at(g, p, i, j, model)?;
        let on = transmission_probability(&ps, TransmittedChoice::U);
        let off = transmission_probability(&ps, TransmittedChoice::V);
        acc += 2.0 * (on - off);
    }
    Ok((acc / (n * n)).clamp(0.0, 1.0))
}

/// A spinor left at one aperture by which-way detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectedSpinor {
    pub aperture: usize,
    pub spinor: Spinor,
}

/// Which-way detection at aperture `i` (1 or 2). Maps `|++>` to `|+>_i` and
/// `|-->` to `|->_i`, discarding the pair correlation.
pub fn detect_at_slit(s: &TwoSpinState, i: usize) -> Result<DetectedSpinor> {
    if !(1..=2).contains(&i) {
        return Err(Error::SlitIndex { index: i, count: 2 });
    }
    let distance = s.max_abs_diff(&basis_u());
    if distance > COLLAPSE_TOL {
        return Err(Error::UnsupportedCollapse { distance });
    }
    let (c_plus, c_minus) = (s.amplitude(0, 0), s.amplitude(1, 1));
    let norm = (c_plus.norm_sqr() + c_minus.norm_sqr()).sqrt();
    let spinor = Spinor::new(c_plus / norm, c_minus / norm)?;
    Ok(DetectedSpinor { aperture: i, spinor })
}

/// Projective measurement of one factor in the basis `R(axis_angle){|+>, |->}`.
pub fn measure_factor(s: &TwoSpinState, factor: Factor, axis_angle: f64) -> Result<Ensemble> {
    let total = s.norm_sqr();
    if !total.is_finite() || total <= 0.0 {
        return Err(Error::InvalidInput("cannot measure a zero-norm state".into()));
    }
    let r = rotation_matrix(RotationAngle(axis_angle));
    // Columns of R are the rotated basis kets.
    let axes = [[r[0][0], r[1][0]], [r[0][1], r[1][1]]];

    let mut entries = Vec::with_capacity(2);
    for b in axes {
        let mut out = [num_complex::Complex64::new(0.0, 0.0); 4];
        for other in 0..2 {
            let (idx0, idx1) = match factor {
                Factor::First => ((0, other), (1, other)),
                Factor::Second => ((other, 0), (other, 1)),
            };
            let overlap = b[0] * s.amplitude(idx0.0, idx0.1) + b[1] * s.amplitude(idx1.0, idx1.1);
            for (k, bk) in b.iter().enumerate() {
                let (i, j) = match factor {
                    Factor::First => (k, other),
                    Factor::Second => (other, k),
                };
                out[2 * i + j] = bk * overlap;
            }
        }
        let projected = TwoSpinState::new(out)?;
        let weight = (projected.norm_sqr() / total).min(1.0);
        if weight > WEIGHT_FLOOR {
            let collapsed = (1.0 / projected.norm()) * projected;
            entries.push((weight, EnsembleState::Pair(collapsed)));
        }
    }
    Ensemble::new(entries)
}

/// Probability that an ensemble registers as the transmitted state.
pub fn ensemble_transmission(e: &Ensemble, choice: TransmittedChoice) -> Result<f64> {
    let target = choice.state();
    e.entries().iter().try_fold(0.0, |acc, (w, state)| match state {
        EnsembleState::Pair(s) => Ok(acc + w * inner(&target, s).norm_sqr()),
        EnsembleState::Single(_) => Err(Error::InvalidInput("transmission needs two-spin ensemble entries".into())),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub theta: f64,
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FringeProfile {
    pub samples: Vec<Sample>,
    pub i0: f64,
}

impl FringeProfile {
    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.theta)
    }

    pub fn intensities(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.intensity)
    }

    pub fn max(&self) -> f64 {
        self.intensities().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.intensities().fold(f64::INFINITY, f64::min)
    }

    /// `(I_max - I_min) / (I_max + I_min)`; zero for an all-dark profile.
    pub fn visibility(&self) -> f64 {
        let (hi, lo) = (self.max(), self.min());
        if hi + lo == 0.0 {
            0.0
        } else {
            (hi - lo) / (hi + lo)
        }
    }

    /// Angles of interior samples strictly above the left neighbour and not
    /// below the right one. A flat top of two samples counts once, at its
    /// left end.
    pub fn local_maxima(&self) -> Vec<f64> {
        self.samples
            .windows(3)
            .filter(|w| {
                let (a, b, c) = (w[0].intensity, w[1].intensity, w[2].intensity);
                b > a && b >= c
            })
            .map(|w| w[1].theta)
            .collect()
    }
}

/// Everything besides geometry and the screen grid that shapes a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeSettings {
    pub phase: PhaseModel,
    pub transmitted: TransmittedChoice,
    pub i0: f64,
    pub stern_gerlach: Option<SternGerlachStage>,
}

impl Default for FringeSettings {
    fn default() -> Self {
        Self { phase: PhaseModel::default(), transmitted: TransmittedChoice::U, i0: 1.0, stern_gerlach: None }
    }
}

impl FringeSettings {
    pub fn with_convention(convention: PhaseConvention) -> Self {
        Self { phase: convention.into(), ..Self::default() }
    }
}

/// Intensity at one screen point, in units of `i0`. `detection` lists
/// 1-based slits carrying a which-way detector.
pub fn screen_intensity(
    g: &SlitGeometry,
    p: ScreenPoint,
    settings: &FringeSettings,
    detection: &[usize],
) -> Result<f64> {
    let n = g.slit_count();
    if !detection.is_empty() {
        for &i in detection {
            g.check_index(i)?;
        }
        // Independent apertures: |ψ_1|² + ... + |ψ_N|² normalized by N².
        return Ok(1.0 / n as f64);
    }
    if let Some(stage) = settings.stern_gerlach {
        let ps = two_slit_state_at(g, p, settings.phase)
            .map_err(|_| Error::Geometry("a Stern-Gerlach stage is only modeled for two slits".into()))?;
        let ensemble = measure_factor(&ps.to_two_spin(), stage.factor, stage.axis_angle)?;
        return Ok(ensemble_transmission(&ensemble, settings.transmitted)?.clamp(0.0, 1.0));
    }
    if n == 2 {
        let ps = two_slit_state_at(g, p, settings.phase)?;
        return Ok(transmission_probability(&ps, settings.transmitted));
    }
    let on = multi_slit_intensity(g, p, settings.phase)?;
    Ok(match settings.transmitted {
        TransmittedChoice::U => on,
        TransmittedChoice::V => 1.0 - on,
    })
}

pub fn intensity_profile(
    g: &SlitGeometry,
    thetas: &[f64],
    settings: &FringeSettings,
    detection: &[usize],
) -> Result<FringeProfile> {
    if thetas.is_empty() {
        return Err(Error::InvalidInput("screen grid is empty".into()));
    }
    if thetas.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::InvalidInput("screen grid must be strictly increasing".into()));
    }
    if !(settings.i0.is_finite() && settings.i0 > 0.0) {
        return Err(Error::InvalidInput(format!("intensity scale must be positive, got {}", settings.i0)));
    }
    let samples = thetas
        .iter()
        .map(|&theta| {
            let p = ScreenPoint::new(theta)?;
            let rel = screen_intensity(g, p, settings, detection)?;
            Ok(Sample { theta, intensity: settings.i0 * rel })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FringeProfile { samples, i0: settings.i0 })
}

/// `samples` equally spaced angles from `theta_min` to `theta_max` inclusive.
pub fn theta_grid(theta_min: f64, theta_max: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![theta_min],
        n => (0..n)
            .map(|k| {
                let f = k as f64 / (n - 1) as f64;
                theta_min * (1.0 - f) + theta_max * f
            })
            .collect(),
    }
}

//! Aperture layout, screen points, and the per-pair phases seen from a
//! screen point.
//!
//! Slits are numbered from 1 in order of increasing transverse position.
//! All lengths are in meters and all angles in radians.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlitGeometry {
    slit_positions: Vec<f64>,
    wavelength: f64,
    screen_distance: f64,
}

impl SlitGeometry {
    pub fn new(slit_positions: Vec<f64>, wavelength: f64, screen_distance: f64) -> Result<Self> {
        if slit_positions.len() < 2 {
            return Err(Error::Geometry(format!("need at least 2 slits, got {}", slit_positions.len())));
        }
        if slit_positions.iter().any(|a| !a.is_finite()) {
            return Err(Error::Geometry("slit position is not finite".into()));
        }
        if slit_positions.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Geometry("slit positions must be strictly increasing".into()));
        }
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::Geometry(format!("wavelength must be positive, got {wavelength}")));
        }
        if !(screen_distance.is_finite() && screen_distance > 0.0) {
            return Err(Error::Geometry(format!("screen distance must be positive, got {screen_distance}")));
        }
        Ok(Self { slit_positions, wavelength, screen_distance })
    }

    /// `count` slits with spacing `separation`, centered on the axis.
    pub fn uniform(count: usize, separation: f64, wavelength: f64, screen_distance: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(Error::Geometry(format!("separation must be positive, got {separation}")));
        }
        let center = (count as f64 - 1.0) / 2.0;
        let positions = (0..count).map(|k| (k as f64 - center) * separation).collect();
        Self::new(positions, wavelength, screen_distance)
    }

    pub fn slit_positions(&self) -> &[f64] {
        &self.slit_positions
    }

    pub fn slit_count(&self) -> usize {
        self.slit_positions.len()
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn screen_distance(&self) -> f64 {
        self.screen_distance
    }

    /// Position of slit `i` (1-based).
    pub fn position(&self, i: usize) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.slit_positions[i - 1])
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.slit_count() {
            return Err(Error::SlitIndex { index: i, count: self.slit_count() });
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidInput(format!("pair needs two distinct slits, got ({i}, {j})")));
        }
        Ok(())
    }

    /// All pairs `(i, j)` with `i < j`, 1-based.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.slit_count();
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
    }
}

/// A screen point addressed by its angle from the central normal.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ScreenPoint {
    theta: f64,
}

impl ScreenPoint {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta.abs() < FRAC_PI_2) {
            return Err(Error::InvalidInput(format!("screen angle {theta} outside (-π/2, π/2)")));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Which angle plays the role of the pair phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseSource {
    /// Optical path phase `2π (a_j - a_i) / λ · sin θ`.
    #[default]
    Optical,
    /// Geometric angle `α_i - α_j` between the two rays meeting at the point.
    Subtended,
}

/// Angle of incidence at `p` of the straight ray from each slit, in slit order.
pub fn incidence_angles(g: &SlitGeometry, p: ScreenPoint) -> Vec<f64> {
    let l = g.screen_distance;
    let x = l * p.theta.tan();
    g.slit_positions.iter().map(|a| ((x - a) / l).atan()).collect()
}

/// `φ_ij = 2π (a_j - a_i) / λ · sin θ`.
pub fn pair_phase(g: &SlitGeometry, p: ScreenPoint, i: usize, j: usize) -> Result<f64> {
    g.check_pair(i, j)?;
    let d = g.slit_positions[j - 1] - g.slit_positions[i - 1];
    Ok(d * (TAU * p.theta.sin() / g.wavelength))
}

/// `α_i - α_j` from [`incidence_angles`].
pub fn subtended_angle(g: &SlitGeometry, p: ScreenPoint, i: usize, j: usize) -> Result<f64> {
    g.check_pair(i, j)?;
    let l = g.screen_distance;
    let x = l * p.theta.tan();
    let alpha = |k: usize| ((x - g.slit_positions[k - 1]) / l).atan();
    Ok(alpha(i) - alpha(j))
}

pub fn pair_angle(g: &SlitGeometry, p: ScreenPoint, i: usize, j: usize, source: PhaseSource) -> Result<f64> {
    match source {
        PhaseSource::Optical => pair_phase(g, p, i, j),
        PhaseSource::Subtended => subtended_angle(g, p, i, j),
    }
}

//! Classical wave reference for multi-slit intensities.
//!
//! Works on raw per-slit phases only and shares no code with the
//! spin-coupling model, so it can be used to check it.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit phasors `e^{iφ_k}`, one per slit, at a single screen point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavePhaseSet {
    phases: Vec<f64>,
}

impl WavePhaseSet {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.len() < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 phases, got {}", phases.len())));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("phase is not finite".into()));
        }
        Ok(Self { phases })
    }

    /// Far-field phases `2π a_k sin θ / λ` for apertures at `positions`.
    pub fn far_field(positions: &[f64], wavelength: f64, theta: f64) -> Result<Self> {
        let k = TAU * theta.sin() / wavelength;
        Self::new(positions.iter().map(|a| k * a).collect())
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    fn phasor_sum(&self) -> Complex64 {
        self.phases.iter().map(|&p| Complex64::from_polar(1.0, p)).sum()
    }
}

/// `|Σ e^{iφ_k}|² / N²`.
pub fn classical_intensity(ws: &WavePhaseSet) -> f64 {
    let n = ws.len() as f64;
    ws.phasor_sum().norm_sqr() / (n * n)
}

/// `Σ |e^{iφ_k}|² / N²`, the pattern of independent non-interfering slits.
pub fn independent_intensity(ws: &WavePhaseSet) -> f64 {
    let n = ws.len() as f64;
    let total: f64 = ws.phases.iter().map(|&p| Complex64::from_polar(1.0, p).norm_sqr()).sum();
    total / (n * n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseCheck {
    /// `N + 2 Σ_{i<j} cos(φ_i - φ_j)`
    pub lhs: f64,
    /// `|Σ e^{iφ_k}|²`
    pub rhs: f64,
    pub diff: f64,
}

pub fn pairwise_identity_check(ws: &WavePhaseSet) -> PairwiseCheck {
    let p = &ws.phases;
    let mut lhs = p.len() as f64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            lhs += 2.0 * (p[i] - p[j]).cos();
        }
    }
    let rhs = ws.phasor_sum().norm_sqr();
    PairwiseCheck { lhs, rhs, diff: (lhs - rhs).abs() }
}

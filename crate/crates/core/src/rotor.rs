//! Planar rotations acting independently on the two factors of a pair state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{basis_u, basis_v, decompose_uv, TwoSpinState};

/// Largest residual outside span{u, v} accepted by [`compose_pair_state`].
pub const SPAN_TOL: f64 = 1e-10;

/// An angle in radians. Never reduced modulo 2π.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationAngle(pub f64);

impl RotationAngle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for RotationAngle {
    fn from(radians: f64) -> Self {
        RotationAngle(radians)
    }
}

/// `R(alpha) ⊗ R(beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PairRotation {
    pub alpha: RotationAngle,
    pub beta: RotationAngle,
}

impl PairRotation {
    pub fn new(alpha: impl Into<RotationAngle>, beta: impl Into<RotationAngle>) -> Self {
        Self { alpha: alpha.into(), beta: beta.into() }
    }

    /// The single-sided form `(I, R(beta - alpha))`, which agrees with `self`
    /// on span{u, v}.
    pub fn reduced(&self) -> PairRotation {
        PairRotation::new(0.0, self.beta.0 - self.alpha.0)
    }

    pub fn then(&self, next: &PairRotation) -> PairRotation {
        PairRotation::new(self.alpha.0 + next.alpha.0, self.beta.0 + next.beta.0)
    }
}

/// `[[cos a, sin a], [-sin a, cos a]]`, acting on column spinors `(c_plus, c_minus)`.
pub fn rotation_matrix(a: RotationAngle) -> [[f64; 2]; 2] {
    let (s, c) = a.0.sin_cos();
    [[c, s], [-s, c]]
}

#[allow(clippy::needless_range_loop)]
pub fn apply_pair(pr: &PairRotation, s: &TwoSpinState) -> TwoSpinState {
    let ra = rotation_matrix(pr.alpha);
    let rb = rotation_matrix(pr.beta);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for k in 0..2 {
        for l in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    acc += ra[k][i] * rb[l][j] * s.amplitude(i, j);
                }
            }
            out[2 * k + l] = acc;
        }
    }
    TwoSpinState::from_raw(out)
}

/// Coordinates `(c_u, c_v)` of `(R(alpha), R(beta)) u`.
pub fn pair_on_u(alpha: impl Into<RotationAngle>, beta: impl Into<RotationAngle>) -> (f64, f64) {
    let d = beta.into().0 - alpha.into().0;
    (d.cos(), -d.sin())
}

/// Coordinates `(c_u, c_v)` of `(R(alpha), R(beta)) v`.
pub fn pair_on_v(alpha: impl Into<RotationAngle>, beta: impl Into<RotationAngle>) -> (f64, f64) {
    let d = beta.into().0 - alpha.into().0;
    (d.sin(), d.cos())
}

/// The pair state `cos(phi) u - sin(phi) v` reached from `u` by `(I, R(phi))`.
pub fn paired_state(phi: f64) -> TwoSpinState {
    phi.cos() * basis_u() - phi.sin() * basis_v()
}

/// Carries a pair state from one aperture pair to the next by applying
/// `(R(beta), R(gamma))`. A state `cos(p) u - sin(p) v` comes back as
/// `cos(p + gamma - beta) u - sin(p + gamma - beta) v`.
pub fn compose_pair_state(
    psi: &TwoSpinState,
    beta: impl Into<RotationAngle>,
    gamma: impl Into<RotationAngle>,
) -> Result<TwoSpinState> {
    let residual = decompose_uv(psi).residual_norm;
    if residual > SPAN_TOL {
        return Err(Error::NotInUvSpan { residual });
    }
    Ok(apply_pair(&PairRotation::new(beta, gamma), psi))
}

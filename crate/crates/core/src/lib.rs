//! Spin-coupling model of multi-slit interference.
//!
//! An aperture pair induces a rotationally invariant two-spin state at each
//! screen point. Rotating the two factors by the angles of incidence mixes
//! the transmitted state `u = (|++> + |-->)/√2` with the singlet
//! `v = (|+-> - |-+>)/√2`, and the screen intensity follows the weight left
//! on the transmitted state. The [`oracle`] module is an independent
//! classical wave calculation used to check the model.

pub mod error;
pub mod fringe;
pub mod geometry;
pub mod oracle;
pub mod qstate;
pub mod rotor;

pub use error::{Error, Result};
pub use fringe::{
    detect_at_slit, ensemble_transmission, intensity_profile, measure_factor, multi_slit_intensity, screen_intensity,
    theta_grid, transmission_probability, two_slit_state_at, DetectedSpinor, Factor, FringeProfile, FringeSettings,
    PairState, PhaseConvention, PhaseModel, Sample, SternGerlachStage, TransmittedChoice,
};
pub use geometry::{incidence_angles, pair_phase, subtended_angle, PhaseSource, ScreenPoint, SlitGeometry};
pub use oracle::{classical_intensity, independent_intensity, pairwise_identity_check, WavePhaseSet};
pub use qstate::{basis_u, basis_v, decompose_uv, inner, tensor, Ensemble, EnsembleState, Spinor, TwoSpinState};
pub use rotor::{
    apply_pair, compose_pair_state, pair_on_u, pair_on_v, paired_state, rotation_matrix, PairRotation, RotationAngle,
};

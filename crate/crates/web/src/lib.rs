//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns flat `f64` arrays so the page can draw them directly.
//! Lengths are in micrometers and nanometers at this boundary for slider
//! convenience and converted to meters here.

use spinfringe::{
    apply_pair, basis_u, classical_intensity, decompose_uv, ensemble_transmission, independent_intensity,
    intensity_profile, measure_factor, paired_state, theta_grid, EnsembleState, Factor, FringeSettings, PairRotation,
    PhaseConvention, SlitGeometry, SternGerlachStage, TransmittedChoice, WavePhaseSet,
};
use wasm_bindgen::prelude::*;

/// Parameters of the fringe explorer, as plain numbers from the page controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeQuery {
    pub slits: usize,
    pub separation_um: f64,
    pub wavelength_nm: f64,
    pub theta_max: f64,
    pub samples: usize,
    pub full_convention: bool,
    pub v_transmitted: bool,
    pub detector: bool,
    /// Stern-Gerlach axis angle on factor 1; NaN disables the stage.
    pub sg_axis: f64,
}

/// Returns `[theta..., model..., oracle...]`, each block `samples` long.
pub fn fringe_curves(q: &FringeQuery) -> Result<Vec<f64>, String> {
    let g = SlitGeometry::uniform(q.slits, q.separation_um * 1e-6, q.wavelength_nm * 1e-9, 1.0)
        .map_err(|e| e.to_string())?;
    let thetas = theta_grid(-q.theta_max, q.theta_max, q.samples);
    let settings = FringeSettings {
        phase: if q.full_convention { PhaseConvention::Full } else { PhaseConvention::Half }.into(),
        transmitted: if q.v_transmitted { TransmittedChoice::V } else { TransmittedChoice::U },
        i0: 1.0,
        stern_gerlach: (!q.sg_axis.is_nan() && q.slits == 2)
            .then_some(SternGerlachStage { factor: Factor::First, axis_angle: q.sg_axis }),
    };
    let detection: Vec<usize> = if q.detector { vec![1] } else { Vec::new() };
    let profile = intensity_profile(&g, &thetas, &settings, &detection).map_err(|e| e.to_string())?;

    let mut out = thetas.clone();
    out.extend(profile.intensities());
    for &t in &thetas {
        let ws = WavePhaseSet::far_field(g.slit_positions(), g.wavelength(), t).map_err(|e| e.to_string())?;
        out.push(if q.detector { independent_intensity(&ws) } else { classical_intensity(&ws) });
    }
    Ok(out)
}

/// `(R(alpha), R(beta)) u` as `[amp_pp, amp_pm, amp_mp, amp_mm, c_u, c_v]`.
pub fn rotated_pair(alpha: f64, beta: f64) -> Vec<f64> {
    let s = apply_pair(&PairRotation::new(alpha, beta), &basis_u());
    let c = decompose_uv(&s);
    let mut out: Vec<f64> = s.amplitudes().iter().map(|a| a.re).collect();
    out.extend([c.c_u.re, c.c_v.re]);
    out
}

/// Measures factor 1 of `cos(phi) u - sin(phi) v` along `axis`. Returns
/// `[transmission_u, transmission_v, w, a_pp, a_pm, a_mp, a_mm, ...]` with
/// one weight/amplitude group per outcome.
pub fn stern_gerlach(phi: f64, axis: f64) -> Result<Vec<f64>, String> {
    let e = measure_factor(&paired_state(phi), Factor::First, axis).map_err(|e| e.to_string())?;
    let mut out = vec![
        ensemble_transmission(&e, TransmittedChoice::U).map_err(|e| e.to_string())?,
        ensemble_transmission(&e, TransmittedChoice::V).map_err(|e| e.to_string())?,
    ];
    for (w, state) in e.entries() {
        if let EnsembleState::Pair(s) = state {
            out.push(*w);
            out.extend(s.amplitudes().iter().map(|a| a.re));
        }
    }
    Ok(out)
}

#[wasm_bindgen(js_name = fringeCurves)]
#[allow(clippy::too_many_arguments)]
pub fn fringe_curves_js(
    slits: usize,
    separation_um: f64,
    wavelength_nm: f64,
    theta_max: f64,
    samples: usize,
    full_convention: bool,
    v_transmitted: bool,
    detector: bool,
    sg_axis: f64,
) -> Result<Vec<f64>, JsError> {
    let q = FringeQuery {
        slits,
        separation_um,
        wavelength_nm,
        theta_max,
        samples,
        full_convention,
        v_transmitted,
        detector,
        sg_axis,
    };
    fringe_curves(&q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = rotatedPair)]
pub fn rotated_pair_js(alpha: f64, beta: f64) -> Vec<f64> {
    rotated_pair(alpha, beta)
}

#[wasm_bindgen(js_name = sternGerlach)]
pub fn stern_gerlach_js(phi: f64, axis: f64) -> Result<Vec<f64>, JsError> {
    stern_gerlach(phi, axis).map_err(|e| JsError::new(&e))
}

//! Self-check suite: evaluates each identity of the model on random inputs
//! and reports the largest deviation seen against its tolerance.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinfringe::fringe::pair_state_at;
use spinfringe::*;

pub const DEFAULT_SEED: u64 = 0x5eed_f41e;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Multiplies every tolerance. Values below 1 tighten the suite.
    pub tolerance_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, tolerance_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub laws: Vec<LawResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn failures(&self) -> usize {
        self.laws.iter().filter(|l| !l.passed()).count()
    }

    pub fn get(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for l in &self.laws {
            writeln!(
                f,
                "{:<4} {:<width$}  cases={:<6} max_error={:.3e}  tolerance={:.1e}",
                if l.passed() { "PASS" } else { "FAIL" },
                l.name,
                l.cases,
                l.max_error,
                l.tolerance,
            )?;
        }
        write!(f, "{} of {} laws passed", self.laws.len() - self.failures(), self.laws.len())
    }
}

struct Suite {
    rng: ChaCha8Rng,
    scale: f64,
    laws: Vec<LawResult>,
}

impl Suite {
    fn record(&mut self, name: &'static str, cases: usize, max_error: f64, tolerance: f64) {
        self.laws.push(LawResult { name, cases, max_error, tolerance: tolerance * self.scale });
    }

    fn angle(&mut self) -> f64 {
        self.rng.gen_range(-10.0..10.0)
    }

    fn uv_state(&mut self) -> TwoSpinState {
        let mut c = || Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0));
        let (a, b) = (c(), c());
        a * basis_u() + b * basis_v()
    }

    fn any_state(&mut self) -> TwoSpinState {
        let amps =
            std::array::from_fn(|_| Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0)));
        TwoSpinState::new(amps).expect("finite amplitudes")
    }

    fn geometry(&mut self) -> SlitGeometry {
        let n = self.rng.gen_range(2..=6);
        let mut pos = vec![self.rng.gen_range(-5e-6..5e-6)];
        for _ in 1..n {
            let last = *pos.last().unwrap();
            pos.push(last + self.rng.gen_range(0.2e-6..3e-6));
        }
        let lambda = self.rng.gen_range(300e-9..900e-9);
        let l = self.rng.gen_range(0.1..5.0);
        SlitGeometry::new(pos, lambda, l).expect("valid random geometry")
    }
}

fn max(acc: f64, x: f64) -> f64 {
    // NaN must fail the law rather than vanish in f64::max.
    if x.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}

fn re_dist(z: Complex64, x: f64) -> f64 {
    (z - Complex64::new(x, 0.0)).norm()
}

pub fn run_verify(opts: VerifyOptions) -> VerifyReport {
    let mut s = Suite { rng: ChaCha8Rng::seed_from_u64(opts.seed), scale: opts.tolerance_scale, laws: Vec::new() };
    let (u, v) = (basis_u(), basis_v());

    let mut err = 0.0;
    err = max(err, (inner(&u, &u).norm() - 1.0).abs());
    err = max(err, (inner(&v, &v).norm() - 1.0).abs());
    err = max(err, inner(&u, &v).norm());
    s.record("u/v orthonormality", 1, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..10_000 {
        let a = s.angle();
        let pr = PairRotation::new(a, a);
        err = max(err, apply_pair(&pr, &u).max_abs_diff(&u));
        err = max(err, apply_pair(&pr, &v).max_abs_diff(&v));
    }
    s.record("rotational invariance of u and v", 10_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..10_000 {
        let (a, b) = (s.angle(), s.angle());
        let pr = PairRotation::new(a, b);
        let d = b - a;
        let du = decompose_uv(&apply_pair(&pr, &u));
        let dv = decompose_uv(&apply_pair(&pr, &v));
        for e in [
            re_dist(du.c_u, d.cos()),
            re_dist(du.c_v, -d.sin()),
            re_dist(dv.c_u, d.sin()),
            re_dist(dv.c_v, d.cos()),
            du.residual_norm,
            dv.residual_norm,
        ] {
            err = max(err, e);
        }
    }
    s.record("u/v rotation laws", 10_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..1_000 {
        let a = s.angle();
        let out = apply_pair(&PairRotation::new(0.0, a), &u);
        let r = FRAC_1_SQRT_2;
        let expected = [a.cos() * r, -a.sin() * r, a.sin() * r, a.cos() * r];
        for (got, want) in out.amplitudes().iter().zip(expected) {
            err = max(err, re_dist(*got, want));
        }
    }
    s.record("single-sided rotation of u, termwise", 1_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..10_000 {
        let (a, b, c) = (s.angle(), s.angle(), s.angle());
        match compose_pair_state(&paired_state(b - a), b, c) {
            Ok(out) => err = max(err, out.max_abs_diff(&paired_state(c - a))),
            Err(_) => err = f64::INFINITY,
        }
    }
    s.record("pair-state composition", 10_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..10_000 {
        let st = s.uv_state();
        let (p1, p2) = (PairRotation::new(s.angle(), s.angle()), PairRotation::new(s.angle(), s.angle()));
        err = max(err, apply_pair(&p2, &apply_pair(&p1, &st)).max_abs_diff(&apply_pair(&p1.then(&p2), &st)));
        err = max(err, apply_pair(&p1, &st).max_abs_diff(&apply_pair(&p1.reduced(), &st)));
    }
    s.record("group action and reduction on span{u,v}", 10_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..10_000 {
        let st = s.any_state();
        let pr = PairRotation::new(s.angle(), s.angle());
        err = max(err, (apply_pair(&pr, &st).norm() - st.norm()).abs());
    }
    s.record("norm preservation", 10_000, err, 1e-12);

    // Two-slit profile against cos²(φ/2), and full-angle convention maxima positions.
    let (d, lambda) = (2e-6, 500e-9);
    let g2 = SlitGeometry::new(vec![-d / 2.0, d / 2.0], lambda, 1.0).expect("valid geometry");
    let grid = theta_grid(-0.3, 0.3, 10_000);
    let step = grid[1] - grid[0];
    let half = intensity_profile(&g2, &grid, &FringeSettings::with_convention(PhaseConvention::Half), &[]);
    let err = match &half {
        Ok(p) => p.samples.iter().fold(0.0, |acc, smp| {
            let phi = std::f64::consts::TAU * d / lambda * smp.theta.sin();
            max(acc, (smp.intensity - (phi / 2.0).cos().powi(2)).abs())
        }),
        Err(_) => f64::INFINITY,
    };
    s.record("two-slit model vs cos^2(phi/2)", grid.len(), err, 1e-9);

    let full = intensity_profile(&g2, &grid, &FringeSettings::with_convention(PhaseConvention::Full), &[]);
    let err = match &full {
        Ok(p) => maxima_offset_in_steps(&p.local_maxima(), d, lambda / 2.0, (-0.3, 0.3), step),
        Err(_) => f64::INFINITY,
    };
    s.record("full-angle convention maxima at d sin(theta) = m lambda/2 (grid steps)", grid.len(), err, 1.0);

    let mut err = 0.0;
    for k in 0..10_000 {
        let n = 2 + k % 5;
        let phases = (0..n).map(|_| s.rng.gen_range(-20.0..20.0)).collect();
        let ws = WavePhaseSet::new(phases).expect("finite phases");
        err = max(err, pairwise_identity_check(&ws).diff);
    }
    s.record("pairwise identity N=2..6", 10_000, err, 1e-9);

    let mut err = 0.0;
    for _ in 0..1_000 {
        let g = s.geometry();
        let theta = s.rng.gen_range(-1.2..1.2);
        let p = ScreenPoint::new(theta).expect("angle in range");
        let model = multi_slit_intensity(&g, p, PhaseConvention::Half).unwrap_or(f64::INFINITY);
        let ws = WavePhaseSet::far_field(g.slit_positions(), g.wavelength(), theta).expect("finite phases");
        err = max(err, (model - classical_intensity(&ws)).abs());
    }
    s.record("multi-slit model vs classical oracle", 1_000, err, 1e-9);

    let mut err = 0.0;
    for k in 0..200 {
        let g = s.geometry();
        let slit = 1 + k % g.slit_count();
        err = max(
            err,
            match intensity_profile(&g, &grid[..2_000], &FringeSettings::default(), &[slit]) {
                Ok(p) => p.max() - p.min(),
                Err(_) => f64::INFINITY,
            },
        );
    }
    s.record("detection flattens the profile", 200, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..1_000 {
        let phi = s.angle();
        let psi = paired_state(phi);
        match measure_factor(&psi, Factor::First, 0.0) {
            Ok(e) => {
                for (w, _) in e.entries() {
                    err = max(err, (w - 0.5).abs());
                }
                err = max(err, (e.total_weight() - 1.0).abs());
                let t = ensemble_transmission(&e, TransmittedChoice::U).unwrap_or(f64::INFINITY);
                err = max(err, (t - phi.cos().powi(2) / 2.0).abs());
            }
            Err(_) => err = f64::INFINITY,
        }
    }
    s.record("Stern-Gerlach ensemble weights and transmission", 1_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..1_000 {
        let g = s.geometry();
        let p = ScreenPoint::new(s.rng.gen_range(-1.2..1.2)).expect("angle in range");
        for conv in [PhaseConvention::Half, PhaseConvention::Full] {
            let mut settings = FringeSettings::with_convention(conv);
            let on = screen_intensity(&g, p, &settings, &[]).unwrap_or(f64::INFINITY);
            settings.transmitted = TransmittedChoice::V;
            let off = screen_intensity(&g, p, &settings, &[]).unwrap_or(f64::INFINITY);
            err = max(err, (on + off - 1.0).abs());
        }
    }
    s.record("transmitted/absorbed complementarity", 1_000, err, 1e-12);

    let mut err = 0.0;
    for _ in 0..1_000 {
        let g = s.geometry();
        let theta = s.rng.gen_range(-1.2..1.2);
        let p = ScreenPoint::new(theta).expect("angle in range");
        let alphas = incidence_angles(&g, p);
        for conv in [PhaseConvention::Half, PhaseConvention::Full] {
            let ps = match pair_state_at(&g, p, 1, 2, PhaseModel::from(conv)) {
                Ok(ps) => ps,
                Err(_) => {
                    err = f64::INFINITY;
                    continue;
                }
            };
            let rotated = apply_pair(&PairRotation::new(alphas[0], alphas[0] + ps.phi), &u);
            let c = decompose_uv(&rotated);
            err = max(err, re_dist(c.c_u, ps.c_u));
            err = max(err, re_dist(c.c_v, ps.c_v));
        }
    }
    s.record("pair state vs rotor computation", 1_000, err, 1e-12);

    let mut err: f64 = 0.0;
    for _ in 0..1_000 {
        let g = s.geometry();
        let p = ScreenPoint::new(s.rng.gen_range(-1.2..1.2)).expect("angle in range");
        for (i, j) in g.pairs() {
            let (a, b) = (pair_phase(&g, p, i, j), pair_phase(&g, p, j, i));
            err = match (a, b) {
                (Ok(a), Ok(b)) => max(err, (a + b).abs()),
                _ => f64::INFINITY,
            };
        }
    }
    s.record("pair phase antisymmetry", 1_000, err, 0.0);

    VerifyReport { laws: s.laws }
}

/// Largest distance, in grid steps, between a detected maximum and the
/// nearest predicted position `d sin θ = m·spacing`. Infinite when the number
/// of detected maxima differs from the number predicted inside the range.
pub fn maxima_offset_in_steps(maxima: &[f64], d: f64, spacing: f64, range: (f64, f64), step: f64) -> f64 {
    let m_max = (d * range.1.sin() / spacing).floor() as i64;
    let m_min = (d * range.0.sin() / spacing).ceil() as i64;
    let predicted: Vec<f64> = (m_min..=m_max).map(|m| (m as f64 * spacing / d).asin()).collect();
    // Maxima exactly on the ends of the grid cannot be detected as interior peaks.
    let interior: Vec<f64> = predicted.iter().copied().filter(|t| *t > range.0 + step && *t < range.1 - step).collect();
    if maxima.len() != interior.len() {
        return f64::INFINITY;
    }
    maxima.iter().zip(&interior).map(|(got, want)| (got - want).abs() / step).fold(0.0, f64::max)
}

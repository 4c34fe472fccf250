use num_complex::Complex64;
use proptest::prelude::*;
use spinfringe::fringe::pair_state_at;
use spinfringe::*;

const TOL: f64 = 1e-12;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn spinor() -> impl Strategy<Value = Spinor> {
    (complex(), complex()).prop_map(|(a, b)| Spinor::new(a, b).unwrap())
}

fn two_spin() -> impl Strategy<Value = TwoSpinState> {
    prop::array::uniform4(complex()).prop_map(|a| TwoSpinState::new(a).unwrap())
}

fn uv_state() -> impl Strategy<Value = TwoSpinState> {
    (complex(), complex()).prop_map(|(a, b)| a * basis_u() + b * basis_v())
}

fn angle() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

/// 2..=6 slits with strictly increasing positions on a micron scale.
fn geometry() -> impl Strategy<Value = SlitGeometry> {
    (prop::collection::vec(0.2e-6f64..3e-6, 1..=5), -5e-6f64..5e-6, 300e-9f64..900e-9, 0.1f64..5.0).prop_map(
        |(gaps, start, lambda, l)| {
            let mut pos = vec![start];
            for g in gaps {
                let last = *pos.last().unwrap();
                pos.push(last + g);
            }
            SlitGeometry::new(pos, lambda, l).unwrap()
        },
    )
}

fn theta() -> impl Strategy<Value = f64> {
    -1.2f64..1.2
}

proptest! {
    #[test]
    fn tensor_norm_is_multiplicative(a in spinor(), b in spinor()) {
        let t = tensor(&a, &b).unwrap();
        prop_assert!((t.norm_sqr() - a.norm_sqr() * b.norm_sqr()).abs() <= TOL);
    }

    #[test]
    fn decomposition_reconstructs_input(s in two_spin()) {
        let d = decompose_uv(&s);
        let residual = d.residual(&s);
        let rebuilt = d.c_u * basis_u() + d.c_v * basis_v() + residual;
        prop_assert!(rebuilt.max_abs_diff(&s) <= TOL);
        prop_assert!((residual.norm() - d.residual_norm).abs() <= TOL);
    }

    #[test]
    fn pair_rotations_compose_additively(
        s in uv_state(), a in angle(), b in angle(), a2 in angle(), b2 in angle()
    ) {
        let first = PairRotation::new(a, b);
        let second = PairRotation::new(a2, b2);
        let stepwise = apply_pair(&second, &apply_pair(&first, &s));
        let combined = apply_pair(&first.then(&second), &s);
        prop_assert!(stepwise.max_abs_diff(&combined) <= TOL);
    }

    #[test]
    fn pair_rotation_reduces_to_single_sided(s in uv_state(), a in angle(), b in angle()) {
        let pr = PairRotation::new(a, b);
        prop_assert!(apply_pair(&pr, &s).max_abs_diff(&apply_pair(&pr.reduced(), &s)) <= TOL);
    }

    #[test]
    fn pair_rotation_preserves_norm(s in two_spin(), a in angle(), b in angle()) {
        let out = apply_pair(&PairRotation::new(a, b), &s);
        prop_assert!((out.norm() - s.norm()).abs() <= TOL);
    }

    #[test]
    fn single_sided_rotation_of_u_termwise(a in angle()) {
        let out = apply_pair(&PairRotation::new(0.0, a), &basis_u());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected = TwoSpinState::from_real([a.cos() * r, -a.sin() * r, a.sin() * r, a.cos() * r]).unwrap();
        prop_assert!(out.max_abs_diff(&expected) <= TOL);
    }

    #[test]
    fn closed_forms_match_operator(a in angle(), b in angle()) {
        let pr = PairRotation::new(a, b);
        let du = decompose_uv(&apply_pair(&pr, &basis_u()));
        let (cu, cv) = pair_on_u(a, b);
        prop_assert!((du.c_u - Complex64::new(cu, 0.0)).norm() <= TOL);
        prop_assert!((du.c_v - Complex64::new(cv, 0.0)).norm() <= TOL);
        let dv = decompose_uv(&apply_pair(&pr, &basis_v()));
        let (cu, cv) = pair_on_v(a, b);
        prop_assert!((dv.c_u - Complex64::new(cu, 0.0)).norm() <= TOL);
        prop_assert!((dv.c_v - Complex64::new(cv, 0.0)).norm() <= TOL);
    }

    #[test]
    fn phase_is_antisymmetric_and_additive(g in geometry(), t in theta()) {
        let p = ScreenPoint::new(t).unwrap();
        let n = g.slit_count();
        for i in 1..=n {
            for j in 1..=n {
                if i == j { continue; }
                let pij = pair_phase(&g, p, i, j).unwrap();
                prop_assert_eq!(pij + pair_phase(&g, p, j, i).unwrap(), 0.0);
                for k in 1..=n {
                    if k == i || k == j { continue; }
                    let pjk = pair_phase(&g, p, j, k).unwrap();
                    let pik = pair_phase(&g, p, i, k).unwrap();
                    // Exact in real arithmetic; allow a few ulps of the operands.
                    let scale = pij.abs() + pjk.abs() + pik.abs();
                    prop_assert!((pik - (pij + pjk)).abs() <= 8.0 * f64::EPSILON * scale);
                }
            }
        }
    }

    #[test]
    fn phase_is_monotone_in_sin_theta(g in geometry(), t1 in theta(), t2 in theta()) {
        prop_assume!(t1 < t2);
        let (p1, p2) = (ScreenPoint::new(t1).unwrap(), ScreenPoint::new(t2).unwrap());
        // a_2 > a_1, so φ_12 increases with sin θ.
        prop_assert!(pair_phase(&g, p1, 1, 2).unwrap() < pair_phase(&g, p2, 1, 2).unwrap());
    }

    #[test]
    fn profile_bounded_and_peaked(g in geometry(), i0 in 0.1f64..10.0, full in any::<bool>()) {
        let conv = if full { PhaseConvention::Full } else { PhaseConvention::Half };
        let settings = FringeSettings { i0, ..FringeSettings::with_convention(conv) };
        let grid = theta_grid(-0.5, 0.5, 101);
        let p = intensity_profile(&g, &grid, &settings, &[]).unwrap();
        prop_assert!(p.intensities().all(|x| (0.0..=i0).contains(&x)));
        prop_assert!((p.samples[50].intensity - i0).abs() <= TOL * i0);
    }

    #[test]
    fn transmitted_choices_are_complementary(g in geometry(), t in theta(), full in any::<bool>()) {
        let conv = if full { PhaseConvention::Full } else { PhaseConvention::Half };
        let p = ScreenPoint::new(t).unwrap();
        let mut settings = FringeSettings::with_convention(conv);
        let on = screen_intensity(&g, p, &settings, &[]).unwrap();
        settings.transmitted = TransmittedChoice::V;
        let off = screen_intensity(&g, p, &settings, &[]).unwrap();
        prop_assert!((on + off - 1.0).abs() <= TOL);
    }

    #[test]
    fn detection_flattens_profile(g in geometry(), slit in 1usize..=6) {
        prop_assume!(slit <= g.slit_count());
        let grid = theta_grid(-0.5, 0.5, 201);
        let p = intensity_profile(&g, &grid, &FringeSettings::default(), &[slit]).unwrap();
        prop_assert!(p.max() - p.min() <= TOL);
    }

    #[test]
    fn measurement_is_consistent(s in two_spin(), axis in angle(), second in any::<bool>()) {
        prop_assume!(s.norm_sqr() > 1e-6);
        let s = (1.0 / s.norm()) * s;
        let factor = if second { Factor::Second } else { Factor::First };
        let e = measure_factor(&s, factor, axis).unwrap();
        prop_assert!((e.total_weight() - 1.0).abs() <= TOL);
        for (_, entry) in e.entries() {
            let EnsembleState::Pair(c) = entry else { panic!("pair entries expected") };
            prop_assert!(c.is_normalized());
            let again = measure_factor(c, factor, axis).unwrap();
            prop_assert_eq!(again.len(), 1);
            prop_assert!((again.entries()[0].0 - 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn two_slit_state_matches_rotor(
        d in 0.2e-6f64..5e-6, lambda in 300e-9f64..900e-9, l in 0.1f64..5.0,
        t in theta(), offset in angle(), full in any::<bool>()
    ) {
        let conv = if full { PhaseConvention::Full } else { PhaseConvention::Half };
        let g = SlitGeometry::new(vec![-d / 2.0, d / 2.0], lambda, l).unwrap();
        let ps = two_slit_state_at(&g, ScreenPoint::new(t).unwrap(), conv).unwrap();
        let rotated = apply_pair(&PairRotation::new(offset, offset + ps.phi), &basis_u());
        let coords = decompose_uv(&rotated);
        prop_assert!((coords.c_u.re - ps.c_u).abs() <= TOL);
        prop_assert!((coords.c_v.re - ps.c_v).abs() <= TOL);
    }

    #[test]
    fn multi_slit_matches_classical(g in geometry(), t in theta()) {
        let p = ScreenPoint::new(t).unwrap();
        let model = multi_slit_intensity(&g, p, PhaseConvention::Half).unwrap();
        let ws = WavePhaseSet::far_field(g.slit_positions(), g.wavelength(), t).unwrap();
        prop_assert!((model - classical_intensity(&ws)).abs() <= 1e-9);
    }

    #[test]
    fn subtended_source_agrees_with_rotor(g in geometry(), t in theta()) {
        let p = ScreenPoint::new(t).unwrap();
        let alphas = incidence_angles(&g, p);
        let model = PhaseModel::new(PhaseConvention::Full, PhaseSource::Subtended);
        let ps = pair_state_at(&g, p, 1, 2, model).unwrap();
        let rotated = apply_pair(&PairRotation::new(alphas[1], alphas[0]), &basis_u());
        prop_assert!(rotated.max_abs_diff(&ps.to_two_spin()) <= TOL);
    }

    #[test]
    fn classical_intensity_bounded_and_shift_invariant(
        phases in prop::collection::vec(-20.0f64..20.0, 2..=6), shift in -20.0f64..20.0
    ) {
        let ws = WavePhaseSet::new(phases.clone()).unwrap();
        let i = classical_intensity(&ws);
        prop_assert!((-1e-15..=1.0 + 1e-15).contains(&i));
        let shifted = WavePhaseSet::new(phases.iter().map(|p| p + shift).collect()).unwrap();
        prop_assert!((classical_intensity(&shifted) - i).abs() <= TOL);
        prop_assert!(pairwise_identity_check(&ws).diff <= 1e-9);
    }
}

#[test]
fn classical_intensity_is_one_only_for_equal_phases() {
    let tau = std::f64::consts::TAU;
    let ws = WavePhaseSet::new(vec![0.4, 0.4 + tau, 0.4 - 2.0 * tau]).unwrap();
    assert!((classical_intensity(&ws) - 1.0).abs() <= TOL);
    let ws = WavePhaseSet::new(vec![0.4, 0.41, 0.4]).unwrap();
    assert!(classical_intensity(&ws) < 1.0);
}

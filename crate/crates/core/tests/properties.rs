mod common;

use common::RawProfile;
use proptest::prelude::*;
use sagnac_core::fock::propagate_branch;
use sagnac_core::geometry::decompose_with;
use sagnac_core::interferometer::interferometer_phase_integral;
use sagnac_core::*;
use std::f64::consts::{PI, TAU};

fn samples() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..2.0, 2..12).prop_filter("non-zero profile", |s| s.iter().any(|&v| v > 1e-3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_and_integral_phase_agree(s in samples(), t in 0.5f64..20.0, rot in -1.0f64..1.0) {
        let c = Config::natural(rot);
        let p = Profile::tabulated(t, s).unwrap();
        let closed = interferometer_phase_closed(&c, &p).unwrap();
        let integral = interferometer_phase_integral(&c, &p).unwrap();
        prop_assert!((closed - integral).abs() < 1e-8, "{closed} vs {integral}");
    }

    #[test]
    fn phase_ratio_bounded(s in samples(), t in 0.5f64..20.0, rot in 0.01f64..1.0, sign in prop::bool::ANY) {
        let c = Config::natural(if sign { rot } else { -rot });
        let r = readout(&c, &Profile::tabulated(t, s).unwrap()).unwrap();
        let ratio = r.phase_ratio().unwrap();
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&ratio), "{ratio}");
    }

    #[test]
    fn readout_invariants(s in samples(), t in 0.5f64..20.0, rot in -1.0f64..1.0) {
        let r = readout(&Config::natural(rot), &Profile::tabulated(t, s).unwrap()).unwrap();
        prop_assert!((r.contrast - (-r.delta_alpha.norm_sqr() / 2.0).exp()).abs() < 1e-10);
        prop_assert!((0.0..=1.0).contains(&r.contrast));
        prop_assert!((r.signal + r.contrast * r.phase.cos()).abs() < 1e-10);
        prop_assert!((r.signal.powi(2) + r.sigma_y.powi(2) - r.contrast.powi(2)).abs() < 1e-10);
    }

    #[test]
    fn contrast_ignores_rotation(s in samples(), t in 0.5f64..20.0, a in -1.0f64..1.0, b in -1.0f64..1.0) {
        let p = Profile::tabulated(t, s).unwrap();
        let ca = readout(&Config::natural(a), &p).unwrap().contrast;
        let cb = readout(&Config::natural(b), &p).unwrap().contrast;
        prop_assert!((ca - cb).abs() < 1e-12);
    }

    #[test]
    fn decomposition_identities(s in samples(), t in 0.5f64..20.0, rot in -1.0f64..1.0) {
        let c = Config::natural(rot);
        let p = Profile::tabulated(t, s).unwrap();
        let d = decompose_with(&c, &p, 64).unwrap();
        prop_assert!((d.dynamic_difference + d.geometric_difference - d.interferometer_phase).abs() < 1e-8);
        prop_assert!((d.dynamic_difference_path + d.geometric_difference_path - d.interferometer_phase).abs() < 1e-8);
        prop_assert!((d.geometric_difference - d.geometric_difference_path).abs() < 1e-7,
            "{} vs {}", d.geometric_difference, d.geometric_difference_path);
        if let Some(kappa) = d.kappa {
            prop_assert!((d.dynamic_difference - (kappa - 1.0) * d.geometric_difference).abs() < 1e-8);
        }
    }

    #[test]
    fn qcrb_holds_at_whole_periods(s in samples(), k in 1u32..5, rot in 0.01f64..1.0) {
        let c = Config::natural(rot);
        let p = Profile::tabulated(k as f64 * TAU, s).unwrap();
        let r = sensitivity(&c, &p).unwrap();
        prop_assert!(r.qfi_valid);
        prop_assert!(r.fisher <= r.qfi.unwrap() + 1e-9);
    }

    #[test]
    fn closed_forms_match_quadrature(family in prop::sample::select(vec![ProfileFamily::Flat, ProfileFamily::Sinusoidal, ProfileFamily::Cosinusoidal]),
                                     t in 0.5f64..30.0, omega in -3.0f64..3.0) {
        let p = Profile::make(family, t, None).unwrap();
        let closed = spectrum_closed_form(family, t, omega).unwrap().value;
        let quad = spectrum_numeric(&p, omega).unwrap().value;
        prop_assert!((closed - quad).norm() < 1e-8);
    }
}

#[test]
fn design_and_search_agree() {
    let c = Config::reference();
    let cases = [
        (ProfileFamily::Flat, 1, (4.0, 8.0)),
        (ProfileFamily::Flat, 2, (11.0, 14.0)),
        (ProfileFamily::Sinusoidal, 0, (4.0, 8.0)),
        (ProfileFamily::Sinusoidal, 1, (17.0, 20.0)),
        (ProfileFamily::Cosinusoidal, 2, (10.0, 15.0)),
        (ProfileFamily::Cosinusoidal, 3, (17.0, 20.0)),
    ];
    for (family, index, bracket) in cases {
        let designed = design_time(family, &c, index).unwrap();
        let found = find_zero_time(&Profile::make(family, 1.0, None).unwrap(), &c, bracket).unwrap();
        assert!((designed.duration - found.duration).abs() < 1e-8, "{family:?} {index}");
        for s in [&designed, &found] {
            let r = readout(&c, &s.profile).unwrap();
            assert!((r.contrast - 1.0).abs() < 1e-8);
            assert!((r.phase - s.sagnac_phase).abs() < 1e-8 * s.sagnac_phase.abs());
        }
    }
}

#[test]
fn zero_search_on_tabulated_shape() {
    // A symmetric triangle has W(ω₀) = 0 at ω₀T = 4π. The zero of its squared-sinc
    // spectrum is double, so T is only pinned to about the square root of the residual.
    let c = Config::reference();
    let triangle = Profile::tabulated(1.0, vec![0.0, 1.0, 0.0]).unwrap();
    let s = find_zero_time(&triangle, &c, (10.0, 15.0)).unwrap();
    assert!((s.duration - 2.0 * TAU).abs() < 1e-6, "{}", s.duration);
    assert!(s.spectrum_zero && s.qcrb_time);
}

#[test]
fn fock_convergence_is_second_order() {
    let c = Config::reference();
    for p in [Profile::sinusoidal(TAU).unwrap(), Profile::cosinusoidal(2.0 * TAU).unwrap()] {
        let exact = alpha_at(&c, &p, Branch::Up, p.duration()).unwrap();
        let phase = phi_at(&c, &p, Branch::Up, p.duration()).unwrap() - p.duration() / 2.0;
        let reference = FockState::coherent(exact, 40);
        let error = |steps: usize| {
            let s = propagate_branch(&c, &p, Branch::Up, 40, steps, p.duration()).unwrap();
            let expected: Vec<_> = reference.amplitudes.iter().map(|a| a * num_complex::Complex64::from_polar(1.0, phase)).collect();
            s.amplitudes.iter().zip(&expected).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
        };
        let (coarse, fine) = (error(200), error(400));
        let ratio = coarse / fine;
        assert!((ratio - 4.0).abs() < 1.2, "{:?}: ratio {ratio}", p.family());
    }
}

#[test]
fn random_tabulated_against_brute_force_oracle() {
    let trap = common::Trap {
        omega0: 1.3,
        rotation: 0.25,
    };
    let mut rng = common::rng(5);
    for _ in 0..10 {
        let raw = common::random_tabulated(&mut rng, 6.0);
        let expected = common::interferometer_phase(&trap, &raw, 200);
        let got = interferometer_phase_closed(&trap.config(), &raw.build()).unwrap();
        assert!((got - expected).abs() < 1e-9);
    }
    let raw = RawProfile::Sinusoidal(TAU);
    let expected = common::interferometer_phase(&common::Trap { omega0: 1.0, rotation: 0.1 }, &raw, 400);
    assert!((expected - 0.2 * PI).abs() < 1e-9);
}

#[test]
fn single_precision_smoke() {
    let c = TrapConfig::<f32>::natural(0.1);
    let p = SweepProfile::<f32>::flat(std::f32::consts::TAU).unwrap();
    let r = readout(&c, &p).unwrap();
    assert!((r.contrast - 1.0).abs() < 1e-4);
    assert!((r.phase - 0.2 * std::f32::consts::PI).abs() < 1e-4);
    let d = decompose(&c, &p).unwrap();
    assert!((d.geometric_difference - 0.2 * std::f32::consts::PI).abs() < 1e-4);
}

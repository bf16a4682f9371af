mod common;

use common::{RawProfile, Trap};
use num_complex::Complex64;
use sagnac_core::evolution::{alpha_at, phi_at};
use sagnac_core::interferometer::{interferometer_phase_integral, phase_integral};
use sagnac_core::*;
use std::f64::consts::{PI, TAU};

const TRAP: Trap = Trap {
    omega0: 1.0,
    rotation: 0.1,
};

#[test]
fn arm_endpoints_match_brute_force() {
    let c = TRAP.config();
    for raw in [
        RawProfile::Flat(TAU),
        RawProfile::Flat(4.3),
        RawProfile::Sinusoidal(7.1),
        RawProfile::Cosinusoidal(2.9),
        RawProfile::Tabulated(5.5, vec![0.0, 1.0, 0.3, 2.0, 0.0]),
    ] {
        let p = raw.build();
        for (eta, branch) in [(0, Branch::Up), (1, Branch::Down)] {
            let (alpha, phi) = common::arm(&TRAP, &raw, eta, 400);
            let t = p.duration();
            let a = alpha_at(&c, &p, branch, t).unwrap();
            let f = phi_at(&c, &p, branch, t).unwrap();
            assert!((a - alpha).norm() < 1e-10, "{raw:?} {branch:?}: {a} vs {alpha}");
            assert!((f - phi).abs() < 1e-10, "{raw:?} {branch:?}: {f} vs {phi}");
        }
    }
}

#[test]
fn flat_arm_values() {
    let c = TRAP.config();
    let p = Profile::flat(TAU).unwrap();
    assert!((phi_at(&c, &p, Branch::Up, TAU).unwrap() - 0.18 * TAU).abs() < 1e-10);
    assert!((phi_at(&c, &p, Branch::Down, TAU).unwrap() - 0.08 * TAU).abs() < 1e-10);
    let integral = phase_integral(&c, &p);
    assert!((integral.total() - 0.2 * PI).abs() < 1e-10);
}

#[test]
fn spectrum_against_simpson() {
    for raw in [
        RawProfile::Flat(3.3),
        RawProfile::Sinusoidal(TAU),
        RawProfile::Cosinusoidal(9.0),
        RawProfile::Tabulated(4.0, vec![1.0, 0.0, 2.0, 0.5]),
    ] {
        let p = raw.build();
        for omega in [-2.0, 0.0, 0.37, 1.0, 3.5] {
            let expected = common::spectrum(&raw, omega);
            let w = spectrum(&p, omega).unwrap().value;
            assert!((w - expected).norm() < 1e-10, "{raw:?} at {omega}: {w} vs {expected}");
        }
    }
}

#[test]
fn spectrum_is_linear_in_the_profile() {
    // W of a mixture is the mixture of W; tabulated samples make mixtures exact.
    let a = vec![1.0, 0.0, 2.0, 1.0];
    let b = vec![0.0, 3.0, 1.0, 0.0];
    let t = 5.0;
    let pa = Profile::tabulated(t, a.clone()).unwrap();
    let pb = Profile::tabulated(t, b.clone()).unwrap();
    let (ra, rb) = (pa.rescale_factor().unwrap(), pb.rescale_factor().unwrap());
    let mix: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * ra + y * rb).collect();
    let pm = Profile::tabulated(t, mix).unwrap();
    for omega in [0.3, 1.0, 2.2] {
        let wa = spectrum(&pa, omega).unwrap().value;
        let wb = spectrum(&pb, omega).unwrap().value;
        let wm = spectrum(&pm, omega).unwrap().value;
        assert!((wm - (wa + wb) / 2.0).norm() < 1e-10);
    }
}

#[test]
fn delta_alpha_identity() {
    let c = TRAP.config();
    for raw in [
        RawProfile::Flat(PI),
        RawProfile::Sinusoidal(5.0),
        RawProfile::Tabulated(7.7, vec![0.2, 1.4, 0.0, 0.9, 0.6, 1.1]),
    ] {
        let p = raw.build();
        let (a0, _) = common::arm(&TRAP, &raw, 0, 400);
        let (a1, _) = common::arm(&TRAP, &raw, 1, 400);
        let d = interferometer::delta_alpha(&c, &p).unwrap();
        assert!((d - (a0 - a1)).norm() < 1e-9, "{raw:?}");
    }
}

#[test]
fn interferometer_phase_against_brute_force() {
    let mut rng = common::rng(11);
    for k in 0..20 {
        let raw = common::random_tabulated(&mut rng, 2.0 + k as f64 * 0.7);
        let p = raw.build();
        let expected = common::interferometer_phase(&TRAP, &raw, 200);
        let c = TRAP.config();
        let closed = interferometer_phase_closed(&c, &p).unwrap();
        let integral = interferometer_phase_integral(&c, &p).unwrap();
        assert!((closed - expected).abs() < 1e-9, "{raw:?}: {closed} vs {expected}");
        assert!((integral - expected).abs() < 1e-9, "{raw:?}: {integral} vs {expected}");
    }
}

#[test]
fn derivative_against_finite_differences() {
    for raw in [
        RawProfile::Flat(TAU),
        RawProfile::Sinusoidal(5.3),
        RawProfile::Cosinusoidal(4.0 * PI),
        RawProfile::Tabulated(6.0, vec![0.0, 2.0, 1.0, 1.0, 0.0]),
    ] {
        let p = raw.build();
        for omega in [0.4, 1.0, 1.9] {
            let h = 1e-3;
            let re = |w: f64| common::spectrum(&raw, w).re;
            let fd = (8.0 * (re(omega + h) - re(omega - h)) - (re(omega + 2.0 * h) - re(omega - 2.0 * h))) / (12.0 * h);
            let d = spectrum_derivative(&p, omega).unwrap();
            assert!((d - fd).abs() < 1e-8, "{raw:?} at {omega}: {d} vs {fd}");
        }
    }
}

#[test]
fn coherence_from_arms_matches_readout() {
    let c = TRAP.config();
    let p = Profile::cosinusoidal(5.0).unwrap();
    let r = readout(&c, &p).unwrap();
    let from_arms = phase_integral(&c, &p).coherence();
    assert!((from_arms - r.coherence()).norm() < 1e-10);
    let overlap = Complex64::from_polar(r.contrast, 0.0);
    assert!((from_arms.norm() - overlap.re).abs() < 1e-10);
}

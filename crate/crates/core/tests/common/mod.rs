//! Independent reference computations used by the integration tests. Nothing
//! here calls into the library's numerics; profiles are re-evaluated from
//! their defining formulas and integrals use Richardson-extrapolated
//! composite Simpson rules.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

/// Sweep velocity given by formula, `samples` on a uniform grid.
#[derive(Debug, Clone)]
pub enum RawProfile {
    Flat(f64),
    Sinusoidal(f64),
    Cosinusoidal(f64),
    Tabulated(f64, Vec<f64>),
}

impl RawProfile {
    pub fn duration(&self) -> f64 {
        match self {
            RawProfile::Flat(t) | RawProfile::Sinusoidal(t) | RawProfile::Cosinusoidal(t) | RawProfile::Tabulated(t, _) => *t,
        }
    }

    /// Knots of the piecewise definition, including both ends.
    pub fn knots(&self) -> Vec<f64> {
        let t = self.duration();
        match self {
            RawProfile::Sinusoidal(_) => vec![0.0, t / 2.0, t],
            RawProfile::Tabulated(_, s) => (0..s.len()).map(|k| t * k as f64 / (s.len() - 1) as f64).collect(),
            _ => vec![0.0, t],
        }
    }

    pub fn omega_p(&self, time: f64) -> f64 {
        let t = self.duration();
        match self {
            RawProfile::Flat(_) => PI / t,
            RawProfile::Sinusoidal(_) => PI * PI / (2.0 * t) * (TAU * time / t).sin().abs(),
            RawProfile::Cosinusoidal(_) => PI / t * (1.0 - (TAU * time / t).cos()),
            RawProfile::Tabulated(_, s) => {
                let n = s.len() - 1;
                let h = t / n as f64;
                let area: f64 = s.windows(2).map(|w| h * (w[0] + w[1]) / 2.0).sum();
                let x = (time / h).clamp(0.0, n as f64);
                let k = (x.floor() as usize).min(n - 1);
                let f = x - k as f64;
                (s[k] * (1.0 - f) + s[k + 1] * f) * PI / area
            }
        }
    }

    pub fn build(&self) -> sagnac_core::Profile {
        match self {
            RawProfile::Flat(t) => sagnac_core::Profile::flat(*t),
            RawProfile::Sinusoidal(t) => sagnac_core::Profile::sinusoidal(*t),
            RawProfile::Cosinusoidal(t) => sagnac_core::Profile::cosinusoidal(*t),
            RawProfile::Tabulated(t, s) => sagnac_core::Profile::tabulated(*t, s.clone()),
        }
        .unwrap()
    }
}

/// Composite Simpson on each knot interval with `per_piece` panels (even).
fn simpson<F: Fn(f64) -> Complex64>(f: &F, knots: &[f64], per_piece: usize) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for w in knots.windows(2) {
        let h = (w[1] - w[0]) / per_piece as f64;
        let mut s = f(w[0]) + f(w[1]);
        for k in 1..per_piece {
            let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += f(w[0] + h * k as f64) * weight;
        }
        total += s * (h / 3.0);
    }
    total
}

/// Simpson with one Richardson step.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, knots: &[f64], per_piece: usize) -> Complex64 {
    let coarse = simpson(&f, knots, per_piece);
    let fine = simpson(&f, knots, 2 * per_piece);
    (fine * 16.0 - coarse) / 15.0
}

pub fn spectrum(p: &RawProfile, omega: f64) -> Complex64 {
    let panels = 64 + 8 * (omega.abs() * p.duration()).ceil() as usize;
    integrate(|t| Complex64::from_polar(p.omega_p(t), -omega * t), &p.knots(), 2 * panels) / TAU.sqrt()
}

/// Natural-unit trap (m = ħ = r = 1) with the given `ω₀` and `Ω`.
#[derive(Debug, Clone, Copy)]
pub struct Trap {
    pub omega0: f64,
    pub rotation: f64,
}

impl Trap {
    pub fn config(&self) -> sagnac_core::Config {
        sagnac_core::Config::natural(self.rotation).with_omega0(self.omega0).unwrap()
    }

    /// `λ_η/ħ`
    pub fn rate(&self, p: &RawProfile, eta: u8, t: f64) -> f64 {
        let sign = if eta == 0 { 1.0 } else { -1.0 };
        (self.omega0 / 2.0).sqrt() * (self.rotation + sign * p.omega_p(t))
    }
}

/// Arm endpoint `(α_η(T), φ_η(T))` from a fine grid: `β = α e^{iω₀t}` is
/// accumulated by Simpson pairs, and `φ = ∫(λ/ħ) Im α` by Simpson over the
/// resulting nodes, each on two grids combined by Richardson.
pub fn arm(trap: &Trap, p: &RawProfile, eta: u8, per_piece: usize) -> (Complex64, f64) {
    let run = |m: usize| -> (Complex64, f64) {
        let knots = p.knots();
        let mut beta = Complex64::new(0.0, 0.0);
        let mut phase = 0.0;
        let integrand = |t: f64| Complex64::from_polar(-trap.rate(p, eta, t), trap.omega0 * t);
        for w in knots.windows(2) {
            let h = (w[1] - w[0]) / m as f64;
            // α and the φ integrand at the nodes of this piece.
            let mut prev_t = w[0];
            let mut prev_g = trap.rate(p, eta, w[0]) * (beta * Complex64::from_polar(1.0, -trap.omega0 * w[0])).im;
            for k in 1..=m / 2 {
                let t0 = w[0] + h * (2 * k - 2) as f64;
                let t1 = t0 + h;
                let t2 = t0 + 2.0 * h;
                // β at the midpoint by a 3-point quadratic on [t0, t1], exact to fourth order.
                let f0 = integrand(t0);
                let f1 = integrand(t1);
                let f2 = integrand(t2);
                let beta_mid = beta + (f0 * 5.0 + f1 * 8.0 - f2) * (h / 12.0);
                beta += (f0 + f1 * 4.0 + f2) * (h / 3.0);
                let g_mid = trap.rate(p, eta, t1) * (beta_mid * Complex64::from_polar(1.0, -trap.omega0 * t1)).im;
                let g_end = trap.rate(p, eta, t2) * (beta * Complex64::from_polar(1.0, -trap.omega0 * t2)).im;
                phase += (prev_g + 4.0 * g_mid + g_end) * (t2 - prev_t) / 6.0;
                prev_t = t2;
                prev_g = g_end;
            }
        }
        let t = p.duration();
        (beta * Complex64::from_polar(1.0, -trap.omega0 * t), phase)
    };
    let (a1, f1) = run(per_piece);
    let (a2, f2) = run(2 * per_piece);
    ((a2 * 16.0 - a1) / 15.0, (16.0 * f2 - f1) / 15.0)
}

/// `φ_I = φ₀ − φ₁ + Im(α₁*α₀)` from [`arm`].
pub fn interferometer_phase(trap: &Trap, p: &RawProfile, per_piece: usize) -> f64 {
    let (a0, f0) = arm(trap, p, 0, per_piece);
    let (a1, f1) = arm(trap, p, 1, per_piece);
    f0 - f1 + (a1.conj() * a0).im
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random non-negative piecewise-linear profile with 2 to 12 samples.
pub fn random_tabulated(rng: &mut ChaCha8Rng, duration: f64) -> RawProfile {
    let n = rng.gen_range(2..=12);
    let mut samples: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.15) { 0.0 } else { rng.gen_range(0.0..2.0) })
        .collect();
    if samples.iter().all(|&s| s == 0.0) {
        samples[0] = 1.0;
    }
    RawProfile::Tabulated(duration, samples)
}

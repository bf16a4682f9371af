//! Ramsey readout of the two-arm interferometer: coherence, contrast,
//! interferometer phase and Bloch components of the spin state.

use num_complex::Complex;
use serde::Serialize;

use crate::error::Result;
use crate::evolution::endpoints;
use crate::model::{SweepProfile, TrapConfig};
use crate::scalar::{wrap_angle, Scalar};
use crate::spectrum::spectrum_numeric;

/// `φ_S = 2πmr²Ω/ħ`.
pub fn sagnac_phase<S: Scalar>(config: &TrapConfig<S>) -> S {
    config.sagnac_slope() * config.rotation()
}

/// `1 − √(2/π)·Re W(ω₀)`: the factor relating `φ_I` to `φ_S`.
pub fn scale_factor<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<S> {
    let w = spectrum_numeric(profile, config.omega0())?.value;
    Ok(S::one() - (S::two() / S::PI()).sqrt() * w.re)
}

/// `φ_I = φ_S{1 − √(2/π) Re W(ω₀)}`, unwrapped.
pub fn interferometer_phase_closed<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<S> {
    Ok(sagnac_phase(config) * scale_factor(config, profile)?)
}

/// `∂φ_I/∂Ω`. The spectrum does not depend on `Ω`, so this is exact.
pub fn phase_slope<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<S> {
    Ok(config.sagnac_slope() * scale_factor(config, profile)?)
}

/// The two contributions to `φ_I` computed from the arm evolutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseIntegral<S> {
    /// `φ₀(T) − φ₁(T)`
    pub branch_phase_difference: S,
    /// `Im(α₁*(T) α₀(T))`
    pub overlap_phase: S,
    pub alpha_up: Complex<S>,
    pub alpha_down: Complex<S>,
}

impl<S: Scalar> PhaseIntegral<S> {
    pub fn total(&self) -> S {
        self.branch_phase_difference + self.overlap_phase
    }

    /// `C₁,₀ = ⟨α₁|α₀⟩ e^{i(φ₀−φ₁)}` assembled from the arm endpoints.
    pub fn coherence(&self) -> Complex<S> {
        let (a0, a1) = (self.alpha_up, self.alpha_down);
        let log_overlap = a1.conj() * a0 - Complex::from((a0.norm_sqr() + a1.norm_sqr()) / S::two());
        (log_overlap + Complex::new(S::zero(), self.branch_phase_difference)).exp()
    }
}

pub fn phase_integral<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> PhaseIntegral<S> {
    let [(alpha_up, phi_up), (alpha_down, phi_down)] = endpoints(config, profile);
    PhaseIntegral {
        branch_phase_difference: phi_up - phi_down,
        overlap_phase: (alpha_down.conj() * alpha_up).im,
        alpha_up,
        alpha_down,
    }
}

/// `φ_I = φ₀(T) − φ₁(T) + Im(α₁*(T)α₀(T))`, unwrapped.
pub fn interferometer_phase_integral<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<S> {
    Ok(phase_integral(config, profile).total())
}

/// `Δα = α₀(T) − α₁(T) = −2r√(πmω₀/ħ)·W*(ω₀)·e^{−iω₀T}`.
pub fn delta_alpha<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<Complex<S>> {
    let omega0 = config.omega0();
    let w = spectrum_numeric(profile, omega0)?.value;
    let prefactor = -S::two() * config.radius() * (S::PI() * config.mass() * omega0 / config.hbar()).sqrt();
    Ok(w.conj() * Complex::from_polar(prefactor, -omega0 * profile.duration()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferometerResult<S> {
    pub delta_alpha: Complex<S>,
    /// `|C₁,₀| = exp(−|Δα|²/2)`
    pub contrast: S,
    /// Unwrapped interferometer phase.
    pub phase: S,
    /// `arg C₁,₀` reduced to `(−π, π]`.
    pub principal_phase: S,
    pub sagnac_phase: S,
    /// `⟨σ_z⟩ = −|C₁,₀| cos φ_I`
    pub signal: S,
    /// `⟨σ_y⟩ = −|C₁,₀| sin φ_I`
    pub sigma_y: S,
}

impl<S: Scalar> InterferometerResult<S> {
    pub fn coherence(&self) -> Complex<S> {
        Complex::from_polar(self.contrast, self.phase)
    }

    /// `φ_I/φ_S`, undefined when the Sagnac phase vanishes.
    pub fn phase_ratio(&self) -> Option<S> {
        (self.sagnac_phase != S::zero()).then(|| self.phase / self.sagnac_phase)
    }
}

pub fn readout<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<InterferometerResult<S>> {
    let delta_alpha = delta_alpha(config, profile)?;
    let contrast = (-delta_alpha.norm_sqr() / S::two()).exp();
    let phase = interferometer_phase_closed(config, profile)?;
    Ok(InterferometerResult {
        delta_alpha,
        contrast,
        phase,
        principal_phase: wrap_angle(phase),
        sagnac_phase: sagnac_phase(config),
        signal: -contrast * phase.cos(),
        sigma_y: -contrast * phase.sin(),
    })
}

//! Rotation-rate uncertainty from the `⟨σ_z⟩` signal and the quantum
//! Fisher information bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometer::{phase_slope, readout};
use crate::model::{SweepProfile, TrapConfig};
use crate::scalar::{nearest_positive_integer, Scalar};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityReport<S> {
    /// `δΩ`; `+∞` when the signal has zero slope.
    pub delta_omega: S,
    /// `1/(δΩ)²`
    pub fisher: S,
    /// `ℱ = (∂_Ω φ_I)²`, only available for `ω₀T = 2Kπ`.
    pub qfi: Option<S>,
    pub phase_slope: S,
    pub contrast: S,
    pub phase: S,
    pub saturated: bool,
    /// `ω₀T` is a whole number of trap periods.
    pub qfi_valid: bool,
    /// `δΩ` came from the `|C| = 1`, `sin φ_I = 0` limit.
    pub limit_evaluated: bool,
}

/// Whole number of trap periods in `[0, T]`, if there is one.
pub fn trap_periods<S: Scalar>(config: &TrapConfig<S>, duration: S) -> Option<u64> {
    nearest_positive_integer(config.omega0() * duration / S::TAU(), S::lit(tolerance::TRAP_PERIOD_MULTIPLE))
}

/// `ℱ = (∂_Ω φ_I)²` for `ω₀T = 2Kπ`.
pub fn qfi<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<S> {
    if trap_periods(config, profile.duration()).is_none() {
        return Err(Error::QfiFormulaInvalid((config.omega0() * profile.duration()).as_f64()));
    }
    Ok(phase_slope(config, profile)?.powi(2))
}

/// `δΩ` from `1/(δΩ)² = (∂φ)² sin²φ / (|C|⁻² − 1 + sin²φ)`, with the flag
/// telling whether the removable `0/0` limit was taken.
pub fn delta_omega_from<S: Scalar>(contrast: S, phase: S, slope: S) -> (S, bool) {
    let eps = S::epsilon();
    let s2 = phase.sin().powi(2);
    if contrast >= S::one() - eps && s2 <= eps * eps {
        let d = if slope == S::zero() { S::infinity() } else { S::one() / slope.abs() };
        return (d, true);
    }
    let fisher = slope * slope * s2 / (contrast.powi(-2) - S::one() + s2);
    let d = if fisher > S::zero() { S::one() / fisher.sqrt() } else { S::infinity() };
    (d, false)
}

pub fn delta_omega<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<S> {
    Ok(sensitivity(config, profile)?.delta_omega)
}

pub fn sensitivity<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<SensitivityReport<S>> {
    let r = readout(config, profile)?;
    let slope = phase_slope(config, profile)?;
    let (delta_omega, limit_evaluated) = delta_omega_from(r.contrast, r.phase, slope);
    let fisher = if delta_omega.is_infinite() {
        S::zero()
    } else {
        (S::one() / delta_omega).powi(2)
    };
    let qfi_valid = trap_periods(config, profile.duration()).is_some();
    let unit_contrast = (S::one() - r.contrast).abs() <= S::lit(tolerance::UNIT_CONTRAST);
    Ok(SensitivityReport {
        delta_omega,
        fisher,
        qfi: qfi_valid.then(|| slope * slope),
        phase_slope: slope,
        contrast: r.contrast,
        phase: r.phase,
        saturated: qfi_valid && unit_contrast,
        qfi_valid,
        limit_evaluated,
    })
}

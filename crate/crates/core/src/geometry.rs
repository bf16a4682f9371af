//! Dynamic/geometric decomposition of the interferometer phase.
//!
//! Per arm, `γᵈ = 2φ(T) − ω₀∫|α|²dt − ω₀T/2` and `γᵍ = −∫Im(α*∂ₜα)dt`.
//! For the interferometer, `Δγ̃ᵍ = γᵍ₀ − γᵍ₁ + Im(α₁*α₀)` and
//! `Δγᵈ = γᵈ₀ − γᵈ₁`, so that `φ_I = Δγᵈ + Δγ̃ᵍ`. The geometric part also has
//! the spectral form `Δγ̃ᵍ = √(2/π)·φ_S·ξ` with
//! `ξ = ω₀∂_ω Re W(ω₀) − ω₀T Im W(ω₀)`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{sample_trajectory, BranchEvolution};
use crate::interferometer::{interferometer_phase_closed, sagnac_phase};
use crate::model::{Branch, SweepProfile, TrapConfig};
use crate::scalar::Scalar;
use crate::spectrum::{spectrum_derivative, spectrum_numeric};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometricClass {
    /// `Δγᵈ = 0`: the interferometer phase is entirely geometric.
    PureGeometric,
    /// Geometric with a dynamic part in fixed ratio `κ − 1`.
    UnconventionalGeometric,
    /// `Δγ̃ᵍ = 0`.
    Dynamic,
    /// Both parts vanish (no rotation signal).
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPhases<S> {
    pub branch: Branch,
    pub dynamic: S,
    pub geometric: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDecomposition<S> {
    pub interferometer_phase: S,
    pub sagnac_phase: S,
    /// `Δγᵈ = φ_I − Δγ̃ᵍ` with the spectral `Δγ̃ᵍ`.
    pub dynamic_difference: S,
    /// `Δγ̃ᵍ = √(2/π) φ_S ξ`.
    pub geometric_difference: S,
    /// `Δγᵈ` from the arm evolutions.
    pub dynamic_difference_path: S,
    /// `Δγ̃ᵍ` from the arm evolutions.
    pub geometric_difference_path: S,
    pub xi: S,
    pub xi0: S,
    pub kappa: Option<S>,
    pub class: GeometricClass,
    pub branches: [BranchPhases<S>; 2],
    /// `arg⟨α₁(T)|α₀(T)⟩`
    pub residual_angle: S,
    pub spectrum_at_trap: Complex<S>,
}

impl<S: Scalar> PhaseDecomposition<S> {
    pub fn require_kappa(&self) -> Result<S> {
        self.kappa.ok_or(Error::KappaUndefined(self.geometric_difference.as_f64()))
    }

    /// Half the geometric phase difference from the paths: the area of
    /// `Γ₀` not covered by the mirrored `−Γ₁`.
    pub fn area_difference_measure(&self) -> S {
        self.geometric_difference_path / S::two()
    }
}

fn check_resolution<S: Scalar>(evolution: &BranchEvolution<S>) -> Result<()> {
    let intervals = evolution.samples().len().saturating_sub(1);
    if intervals < tolerance::MIN_TRAJECTORY_SAMPLES {
        return Err(Error::InsufficientResolution {
            requested: intervals,
            minimum: tolerance::MIN_TRAJECTORY_SAMPLES,
        });
    }
    Ok(())
}

/// `γᵈ_η(T) = 2φ_η(T) − ω₀∫|α_η|²dt − ω₀T/2`.
pub fn branch_dynamic_phase<S: Scalar>(evolution: &BranchEvolution<S>) -> Result<S> {
    check_resolution(evolution)?;
    let omega0 = evolution.omega0();
    Ok(S::two() * evolution.final_phase()
        - omega0 * evolution.energy_integral()
        - omega0 * evolution.duration() / S::two())
}

/// `γᵍ_η(T) = −∫Im(α*_η ∂ₜα_η)dt`; for a closed path, −2 × the signed enclosed area.
pub fn branch_geometric_phase<S: Scalar>(evolution: &BranchEvolution<S>) -> Result<S> {
    check_resolution(evolution)?;
    Ok(-evolution.line_integral())
}

/// `arg⟨α₁|α₀⟩ = |α₀α₁*|·sin(arg α₀ − arg α₁)`.
pub fn residual_angle<S: Scalar>(alpha_up: Complex<S>, alpha_down: Complex<S>) -> S {
    let modulus = (alpha_up * alpha_down.conj()).norm();
    if modulus == S::zero() {
        return S::zero();
    }
    modulus * (alpha_up.arg() - alpha_down.arg()).sin()
}

/// Signed polygon area of the closed path through the samples in the
/// `(Re α, Im α)` plane; positive for counter-clockwise traversal.
pub fn shoelace_area<S: Scalar>(path: &[Complex<S>]) -> Result<S> {
    if path.len() < 3 {
        return Err(Error::DegeneratePath(path.len()));
    }
    let twice = path
        .iter()
        .zip(path.iter().cycle().skip(1))
        .fold(S::zero(), |acc, (p, q)| acc + p.re * q.im - q.re * p.im);
    Ok(twice / S::two())
}

/// `ξ` and `ξ₀` of a profile at the trap frequency, with `W(ω₀)`.
pub fn spectral_functionals<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<(S, S, Complex<S>)> {
    let omega0 = config.omega0();
    let w = spectrum_numeric(profile, omega0)?.value;
    let xi0 = omega0 * spectrum_derivative(profile, omega0)?;
    let xi = xi0 - omega0 * profile.duration() * w.im;
    Ok((xi, xi0, w))
}

pub fn classify<S: Scalar>(dynamic: S, geometric: S, phase: S) -> GeometricClass {
    let tol = S::lit(tolerance::CLASSIFICATION) * phase.abs().max(S::one());
    match (dynamic.abs() <= tol, geometric.abs() <= tol) {
        (true, true) => GeometricClass::Undefined,
        (true, false) => GeometricClass::PureGeometric,
        (false, true) => GeometricClass::Dynamic,
        (false, false) => GeometricClass::UnconventionalGeometric,
    }
}

pub fn decompose<S: Scalar>(config: &TrapConfig<S>, profile: &SweepProfile<S>) -> Result<PhaseDecomposition<S>> {
    decompose_with(config, profile, tolerance::DEFAULT_TRAJECTORY_SAMPLES)
}

pub fn decompose_with<S: Scalar>(
    config: &TrapConfig<S>,
    profile: &SweepProfile<S>,
    intervals: usize,
) -> Result<PhaseDecomposition<S>> {
    let phi_s = sagnac_phase(config);
    let phase = interferometer_phase_closed(config, profile)?;
    let (xi, xi0, w) = spectral_functionals(config, profile)?;
    let geometric = (S::two() / S::PI()).sqrt() * phi_s * xi;
    let dynamic = phase - geometric;

    let up = sample_trajectory(config, profile, Branch::Up, intervals)?;
    let down = sample_trajectory(config, profile, Branch::Down, intervals)?;
    let branches = [
        BranchPhases {
            branch: Branch::Up,
            dynamic: branch_dynamic_phase(&up)?,
            geometric: branch_geometric_phase(&up)?,
        },
        BranchPhases {
            branch: Branch::Down,
            dynamic: branch_dynamic_phase(&down)?,
            geometric: branch_geometric_phase(&down)?,
        },
    ];
    let residual = residual_angle(up.final_alpha(), down.final_alpha());
    let geometric_path = branches[0].geometric - branches[1].geometric + residual;
    let dynamic_path = branches[0].dynamic - branches[1].dynamic;

    let class = classify(dynamic, geometric, phase);
    let spectral_zero = w.norm() <= S::lit(tolerance::SPECTRUM_ZERO);
    let kappa = match class {
        GeometricClass::PureGeometric | GeometricClass::UnconventionalGeometric if spectral_zero && xi0 != S::zero() => {
            Some((S::PI() / S::two()).sqrt() / xi0)
        }
        _ => None,
    };

    Ok(PhaseDecomposition {
        interferometer_phase: phase,
        sagnac_phase: phi_s,
        dynamic_difference: dynamic,
        geometric_difference: geometric,
        dynamic_difference_path: dynamic_path,
        geometric_difference_path: geometric_path,
        xi,
        xi0,
        kappa,
        class,
        branches,
        residual_angle: residual,
        spectrum_at_trap: w,
    })
}

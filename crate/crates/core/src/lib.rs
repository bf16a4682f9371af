//! Trap-guided atomic-clock Sagnac interferometer.
//!
//! Two spin-dependent harmonic traps are swept in opposite directions around
//! a ring. Each spin branch leaves its trap mode in a coherent state
//! `|α_η(t)⟩` with phase `φ_η(t)`, and the Ramsey readout after recombination
//! measures the interferometer phase
//! `φ_I = φ_S{1 − √(2/π) Re W(ω₀)}` where `φ_S` is the Sagnac phase and `W`
//! is the Fourier spectrum of the sweep profile.
//!
//! The library is generic over the float type; the aliases at the crate root
//! fix it to `f64`.

pub mod design;
pub mod error;
pub mod evolution;
pub mod fock;
pub mod geometry;
pub mod interferometer;
pub mod model;
pub mod quadrature;
pub mod scalar;
pub mod sensitivity;
pub mod spectrum;
pub mod tolerance;

pub use design::{design_time, find_zero_time, verify_scheme, SchemeSpec};
pub use error::{Error, Result};
pub use evolution::{alpha_at, endpoints, phi_at, sample_trajectory, BranchEvolution, Drive, PathSample};
pub use fock::{coherence_fock, compare_with_closed_form, evolve_fock, evolve_spin_fock, FockState, OracleComparison};
pub use geometry::{
    branch_dynamic_phase, branch_geometric_phase, decompose, shoelace_area, GeometricClass, PhaseDecomposition,
};
pub use interferometer::{
    delta_alpha, interferometer_phase_closed, interferometer_phase_integral, readout, sagnac_phase, InterferometerResult,
};
pub use model::{lambda_drive, Branch, ProfileFamily, SweepProfile, TrapConfig};
pub use scalar::Scalar;
pub use sensitivity::{delta_omega, qfi, sensitivity, SensitivityReport};
pub use spectrum::{spectrum, spectrum_closed_form, spectrum_derivative, spectrum_numeric, SpectrumValue};

pub type Config = TrapConfig<f64>;
pub type Profile = SweepProfile<f64>;
pub type Evolution = BranchEvolution<f64>;
pub type Readout = InterferometerResult<f64>;
pub type Decomposition = PhaseDecomposition<f64>;
pub type Scheme = SchemeSpec<f64>;
pub type Sensitivity = SensitivityReport<f64>;
